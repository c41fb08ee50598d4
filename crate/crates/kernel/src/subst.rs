use std::collections::{BTreeMap, HashMap};

use crate::error::{KernelError, Result};
use crate::name::Name;
use crate::term::{Term, Var};
use crate::types::Type;

/// A type instantiation followed by a simultaneous term substitution.
///
/// Term keys name variables of the theorem *before* type instantiation;
/// each key `(x, A)` acts on the instantiated variable `(x, A')` where `A'`
/// is `A` under the type map, and its replacement must have type `A'`.
#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Substitution {
    ty_map: BTreeMap<Name, Type>,
    tm_map: BTreeMap<Var, Term>,
    // keys of tm_map after type instantiation
    inst_tm: HashMap<Var, Term>,
}

impl Substitution {
    pub fn new(
        ty_map: impl IntoIterator<Item = (Name, Type)>,
        tm_map: impl IntoIterator<Item = (Var, Term)>,
    ) -> Result<Substitution> {
        let ty_map: BTreeMap<Name, Type> = ty_map.into_iter().collect();
        let tm_map: BTreeMap<Var, Term> = tm_map.into_iter().collect();
        let hty: HashMap<Name, Type> = ty_map.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let mut inst_tm: HashMap<Var, Term> = HashMap::new();
        for (v, t) in &tm_map {
            let want = v.ty().instantiate(&hty);
            if t.ty() != &want {
                return Err(KernelError::IllFormedSubst(format!(
                    "`{}` has type `{}` but replaces `{}` of type `{want}`",
                    t,
                    t.ty(),
                    v.name()
                )));
            }
            let key = v.with_type(want);
            if let Some(prev) = inst_tm.get(&key) {
                if prev != t {
                    return Err(KernelError::IllFormedSubst(format!(
                        "conflicting replacements for `{}` after type instantiation",
                        v.name()
                    )));
                }
            }
            inst_tm.insert(key, t.clone());
        }
        Ok(Substitution { ty_map, tm_map, inst_tm })
    }

    pub fn empty() -> Substitution {
        Substitution::default()
    }

    pub fn is_empty(&self) -> bool {
        self.ty_map.is_empty() && self.tm_map.is_empty()
    }

    pub fn ty_map(&self) -> &BTreeMap<Name, Type> {
        &self.ty_map
    }

    pub fn tm_map(&self) -> &BTreeMap<Var, Term> {
        &self.tm_map
    }

    pub fn type_instantiation(&self) -> HashMap<Name, Type> {
        self.ty_map.iter().map(|(k, v)| (k.clone(), v.clone())).collect()
    }

    pub fn apply_type(&self, ty: &Type) -> Type {
        ty.instantiate(&self.type_instantiation())
    }

    /// Applies the type map to the whole term, then the term map.
    pub fn apply(&self, t: &Term) -> Term {
        let inst = t.inst_type(&self.type_instantiation());
        inst.subst_vars(&self.inst_tm)
    }

    /// Image of a free variable.
    pub fn apply_var(&self, v: &Var) -> Term {
        let inst = v.with_type(self.apply_type(v.ty()));
        self.inst_tm.get(&inst).cloned().unwrap_or_else(|| Term::var(inst))
    }
}
