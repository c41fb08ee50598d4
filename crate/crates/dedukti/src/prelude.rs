//! The HOL encoding every translated module depends on.

use proofcloud_lp::{parse_module, Module};

pub const PRELUDE_NAME: &str = "hol";

pub const PRELUDE_TEXT: &str = "#NAME hol.

type : Type.
bool : type.
ind : type.
arr : type -> type -> type.
def term : type -> Type.
[a : type, b : type] term (arr a b) --> term a -> term b.
proof : term bool -> Type.
eq : a : type -> term a -> term a -> term bool.
select : a : type -> term (arr (arr a bool) a).
Refl : a : type -> x : term a -> proof (eq a x x).
FunExt : a : type -> b : type -> f : term (arr a b) -> g : term (arr a b) -> (x : term a -> proof (eq b (f x) (g x))) -> proof (eq (arr a b) f g).
AppThm : a : type -> b : type -> f : term (arr a b) -> g : term (arr a b) -> x : term a -> y : term a -> proof (eq (arr a b) f g) -> proof (eq a x y) -> proof (eq b (f x) (g y)).
EqMp : p : term bool -> q : term bool -> proof (eq bool p q) -> proof p -> proof q.
DeductAntisym : p : term bool -> q : term bool -> (proof q -> proof p) -> (proof p -> proof q) -> proof (eq bool p q).
BetaConv : a : type -> b : type -> f : term (arr a b) -> x : term a -> proof (eq b (f x) (f x)).
Sym : a : type -> x : term a -> y : term a -> proof (eq a x y) -> proof (eq a y x).
Trans : a : type -> x : term a -> y : term a -> z : term a -> proof (eq a x y) -> proof (eq a y z) -> proof (eq a x z).
ProveHyp : x : term bool -> y : term bool -> proof x -> (proof x -> proof y) -> proof y.
";

/// Proof combinators, in declaration order.
pub const COMBINATORS: &[&str] =
    &["Refl", "FunExt", "AppThm", "EqMp", "DeductAntisym", "BetaConv", "Sym", "Trans", "ProveHyp"];

pub fn prelude_module() -> Module {
    parse_module(PRELUDE_TEXT).expect("prelude parses")
}

pub(crate) fn hol(name: &str) -> proofcloud_lp::Term {
    proofcloud_lp::Term::cnst(format!("{PRELUDE_NAME}.{name}"))
}
