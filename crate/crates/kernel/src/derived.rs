//! Version 6 rules expressed with version 5 primitives.

use crate::error::{KernelError, Result};
use crate::kernel::Kernel;
use crate::sequent::Theorem;
use crate::term::Term;

fn sides<'a>(th: &'a Theorem, rule: &'static str) -> Result<(&'a Term, &'a Term)> {
    th.concl().dest_eq().ok_or_else(|| KernelError::RuleMismatch {
        rule,
        reason: format!("conclusion `{}` is not an equation", th.concl()),
    })
}

/// `G |- p = q` to `G |- q = p` via `refl`, `appThm` and `eqMp` on the
/// equality constant.
pub fn sym_via_primitives(k: &mut Kernel, d: &Theorem) -> Result<Theorem> {
    let (p, _) = sides(d, "sym")?;
    let p = p.clone();
    let eq = Term::eq_const(p.ty());
    let refl_eq = k.refl(&eq)?;
    // |- (=) p = (=) q
    let step = k.app_thm(&refl_eq, d)?;
    let refl_p = k.refl(&p)?;
    // |- (p = p) = (q = p)
    let step = k.app_thm(&step, &refl_p)?;
    k.eq_mp(&step, &refl_p)
}

/// `G |- s = t` and `D |- t = u` to `G u D |- s = u`.
pub fn trans_via_primitives(k: &mut Kernel, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
    let (s, _) = sides(d1, "trans")?;
    sides(d2, "trans")?;
    let s = s.clone();
    let eq_s = Term::app(Term::eq_const(s.ty()), s)?;
    let refl = k.refl(&eq_s)?;
    // |- (s = t) = (s = u)
    let step = k.app_thm(&refl, d2)?;
    k.eq_mp(&step, d1)
}

/// `G |- p` and `D |- q` to `G u (D - {p}) |- q`.
pub fn prove_hyp_via_primitives(k: &mut Kernel, d1: &Theorem, d2: &Theorem) -> Result<Theorem> {
    let eq = k.deduct_antisym(d1, d2)?;
    k.eq_mp(&eq, d1)
}
