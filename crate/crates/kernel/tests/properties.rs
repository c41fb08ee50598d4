mod common;

use common::*;
use proofcloud_kernel::{
    prove_hyp_via_primitives, sym_via_primitives, trans_via_primitives, type_of, KernelVersion, Substitution,
    Theorem,
};
use proptest::prelude::*;

fn check_theorem(g: &Gen, th: &Theorem) {
    assert!(type_of(th.concl()).unwrap().is_bool());
    assert_eq!(th.concl().ty(), &type_of(th.concl()).unwrap());
    for h in th.hyps() {
        assert!(type_of(h).unwrap().is_bool());
    }
    assert!(th.hyps().windows(2).all(|w| w[0].alpha_cmp(&w[1]).is_lt()), "hyps not canonical: {}", th.sequent());
    assert!(g.k.trace().sequent(th.proof()).alpha_eq(th.sequent()));
}

fn run_sequence(seed: u64, steps: usize, version: KernelVersion) {
    let mut g = Gen::new(seed, version);
    for _ in 0..steps {
        let before = g.k.trace().len();
        let (_, ok, helpers) = g.step();
        assert_eq!(g.k.trace().len() - before, ok as usize + helpers);
        if ok {
            let th = g.pool.last().unwrap().clone();
            check_theorem(&g, &th);
        }
    }
    assert!(g.k.trace().is_acyclic());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_rule_sequences(seed in any::<u64>(), steps in 1usize..=200, v6 in any::<bool>()) {
        let version = if v6 { KernelVersion::V6 } else { KernelVersion::V5 };
        run_sequence(seed, steps, version);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn v6_rules_are_admissible(seed in any::<u64>()) {
        let mut g = Gen::new(seed, KernelVersion::V6);
        for _ in 0..30 {
            g.step();
        }
        let d = match g.pick_eq() {
            Some(d) => d,
            None => {
                let t = g.bool_term(2);
                g.k.refl(&t).unwrap()
            }
        };
        let direct = g.k.sym(&d).unwrap();
        let derived = sym_via_primitives(&mut g.k, &d).unwrap();
        prop_assert!(direct.sequent().alpha_eq(derived.sequent()));

        let back = g.k.sym(&d).unwrap();
        let direct = g.k.trans(&d, &back).unwrap();
        let derived = trans_via_primitives(&mut g.k, &d, &back).unwrap();
        prop_assert!(direct.sequent().alpha_eq(derived.sequent()));

        let (d1, d2) = match (g.pick(), g.pick()) {
            (Some(a), Some(b)) => (a, b),
            _ => (d.clone(), d.clone()),
        };
        let direct = g.k.prove_hyp(&d1, &d2).unwrap();
        let derived = prove_hyp_via_primitives(&mut g.k, &d1, &d2).unwrap();
        prop_assert!(direct.sequent().alpha_eq(derived.sequent()));
    }

    #[test]
    fn prove_hyp_discharges_conclusion(seed in any::<u64>()) {
        let mut g = Gen::new(seed, KernelVersion::V6);
        let phi = g.bool_term(2);
        let h = g.bool_term(1);
        let c = g.bool_term(1);
        let d1 = g.k.axiom(&[h.clone()], &phi).unwrap();
        let concl = g.bool_term(1);
        let d2 = g.k.axiom(&[phi.clone(), c.clone()], &concl).unwrap();
        let th = g.k.prove_hyp(&d1, &d2).unwrap();
        // set oracle over nameless hypotheses
        let mut want: Vec<Db> = hyps_db(&d1);
        for x in hyps_db(&d2) {
            if x != to_db(&phi) && !want.contains(&x) {
                want.push(x);
            }
        }
        let got = hyps_db(&th);
        prop_assert_eq!(got.len(), want.len());
        prop_assert!(want.iter().all(|w| got.contains(w)));
    }

    #[test]
    fn empty_subst_is_identity(seed in any::<u64>()) {
        let mut g = Gen::new(seed, KernelVersion::V5);
        for _ in 0..20 {
            g.step();
        }
        if let Some(d) = g.pick() {
            let th = g.k.subst(&Substitution::empty(), &d).unwrap();
            prop_assert!(th.sequent().alpha_eq(d.sequent()));
        }
    }

    #[test]
    fn beta_then_eq_mp_yields_contractum(seed in any::<u64>()) {
        let mut g = Gen::new(seed, KernelVersion::V5);
        let v = g.a_var();
        let body = g.bool_term(2);
        let arg = g.a_term(2);
        let redex = app(&lam(&v, &body), &arg);
        let beta = g.k.beta_conv(&redex).unwrap();
        let hyp = g.k.assume(&redex).unwrap();
        let th = g.k.eq_mp(&beta, &hyp).unwrap();
        prop_assert_eq!(to_db(th.concl()), db_beta(&to_db(&redex)).unwrap());
    }

    #[test]
    fn deduct_antisym_self(seed in any::<u64>()) {
        let mut g = Gen::new(seed, KernelVersion::V5);
        for _ in 0..20 {
            g.step();
        }
        let d = match g.pick() {
            Some(d) => d,
            None => { let t = g.bool_term(1); g.k.assume(&t).unwrap() }
        };
        let th = g.k.deduct_antisym(&d, &d).unwrap();
        prop_assert!(th.concl().alpha_eq(&eq(d.concl(), d.concl())));
        let want: Vec<Db> = hyps_db(&d).into_iter().filter(|h| *h != to_db(d.concl())).collect();
        prop_assert_eq!(hyps_db(&th), want);
    }

    #[test]
    fn subst_agrees_with_nameless_oracle(seed in any::<u64>()) {
        let mut g = Gen::new(seed, KernelVersion::V5);
        let t = g.bool_term(3);
        let x = g.a_var();
        let repl = g.a_term(1);
        let d = g.k.axiom(&[], &t).unwrap();
        let s = Substitution::new([], [(x.clone(), repl.clone())]).unwrap();
        let th = g.k.subst(&s, &d).unwrap();
        let map = std::collections::HashMap::from([((x.name().to_string(), x.ty().to_string()), to_db(&repl))]);
        prop_assert_eq!(to_db(th.concl()), db_subst(&to_db(&t), &map));
    }
}
