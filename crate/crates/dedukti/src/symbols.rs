//! Symbol tables mapping HOL names to emitted identifiers.

use std::collections::{BTreeSet, HashMap};

use proofcloud_kernel::{Name, Type, TypeKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstSym {
    pub ident: String,
    /// Type parameters in the order the constant takes them.
    pub params: Vec<Name>,
    pub generic: Type,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeSym {
    pub ident: String,
    pub arity: usize,
}

/// What earlier modules (or the current one) declare.
#[derive(Debug, Clone, Default)]
pub struct Symbols {
    consts: HashMap<Name, ConstSym>,
    types: HashMap<Name, TypeSym>,
    modules: Vec<String>,
}

impl Symbols {
    pub fn new() -> Symbols {
        Symbols::default()
    }

    pub fn declare_type(&mut self, name: Name, ident: impl Into<String>, arity: usize) {
        self.types.insert(name, TypeSym { ident: ident.into(), arity });
    }

    /// Declares a constant whose parameters are the sorted type variables of
    /// its generic type.
    pub fn declare_const(&mut self, name: Name, ident: impl Into<String>, generic: Type) {
        let params = generic.type_vars().into_iter().collect();
        self.declare_const_with(name, ident, generic, params);
    }

    pub fn declare_const_with(&mut self, name: Name, ident: impl Into<String>, generic: Type, params: Vec<Name>) {
        self.consts.insert(name, ConstSym { ident: ident.into(), params, generic });
    }

    pub fn constant(&self, name: &Name) -> Option<&ConstSym> {
        self.consts.get(name)
    }

    pub fn type_op(&self, name: &Name) -> Option<&TypeSym> {
        self.types.get(name)
    }

    /// Modules the symbols come from, in import order.
    pub fn modules(&self) -> &[String] {
        &self.modules
    }

    /// Adds the symbols a module declares, qualified by its name.
    pub fn import(&mut self, module: &str, local: &Symbols) {
        for (n, s) in &local.types {
            self.types.insert(n.clone(), TypeSym { ident: format!("{module}.{}", s.ident), arity: s.arity });
        }
        for (n, s) in &local.consts {
            let mut s = s.clone();
            s.ident = format!("{module}.{}", s.ident);
            self.consts.insert(n.clone(), s);
        }
        if !self.modules.iter().any(|m| m == module) {
            self.modules.push(module.to_string());
        }
    }

    pub fn const_names(&self) -> impl Iterator<Item = &Name> {
        self.consts.keys()
    }

    pub fn type_names(&self) -> impl Iterator<Item = &Name> {
        self.types.keys()
    }
}

/// Least general generalisation of a non-empty list of types: the most
/// specific type of which every input is an instance.
pub fn lgg(types: &[Type]) -> Type {
    let mut avoid = BTreeSet::new();
    for t in types {
        avoid.extend(t.type_vars());
    }
    let mut counter = 0;
    let mut fresh = || loop {
        counter += 1;
        let n = Name::simple(format!("g{counter}"));
        if !avoid.contains(&n) {
            return Type::var(n);
        }
    };
    let mut acc = types[0].clone();
    for t in &types[1..] {
        let mut memo = HashMap::new();
        acc = anti(&acc, t, &mut memo, &mut fresh);
    }
    acc
}

fn anti(a: &Type, b: &Type, memo: &mut HashMap<(Type, Type), Type>, fresh: &mut impl FnMut() -> Type) -> Type {
    if a == b {
        return a.clone();
    }
    if let (TypeKind::App(f, xs), TypeKind::App(g, ys)) = (a.kind(), b.kind()) {
        if f == g && xs.len() == ys.len() {
            let args = xs.iter().zip(ys).map(|(x, y)| anti(x, y, memo, fresh)).collect();
            return Type::app(f.clone(), args);
        }
    }
    memo.entry((a.clone(), b.clone())).or_insert_with(fresh).clone()
}
