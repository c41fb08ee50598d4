#![allow(dead_code)]

//! Builds the mini-package corpus under `fixtures/packages` from kernel
//! sessions. Every lemma use goes through an axiom carrying the lemma's
//! sequent, as an imported theorem does in a real article.

use std::path::PathBuf;

use proofcloud_analyzer::{standard_choice_axiom, CorpusMeta, PackageMeta};
use proofcloud_article::{emit_article, ArticleResult, Export};
use proofcloud_kernel::{Kernel, KernelVersion, Name, Sequent, Substitution, Term, Theorem, Type, Var};

pub fn packages_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/packages")
}

pub fn figure3_meta() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/figure3/meta.json")
}

fn var(n: &str, ty: Type) -> Term {
    Term::var(Var::new(Name::simple(n), ty))
}

fn fun(a: Type, b: Type) -> Type {
    Type::fun(a, b)
}

struct Session {
    k: Kernel,
    exports: Vec<(String, Theorem)>,
}

impl Session {
    fn new() -> Session {
        Session { k: Kernel::new(KernelVersion::V6), exports: Vec::new() }
    }

    fn export(&mut self, name: &str, th: Theorem) -> Sequent {
        let s = th.sequent().clone();
        self.exports.push((name.to_string(), th));
        s
    }

    /// `|- f l = f r` from the imported lemma `|- l = r`.
    fn use_lemma(&mut self, lemma: &Sequent, f: &str) -> Theorem {
        let l = self.k.axiom(lemma.hyps(), lemma.concl()).unwrap();
        let (lhs, _) = lemma.concl().dest_eq().unwrap();
        let f = var(f, fun(lhs.ty().clone(), Type::bool()));
        let rf = self.k.refl(&f).unwrap();
        self.k.app_thm(&rf, &l).unwrap()
    }

    fn choice_at(&mut self, ty: Option<Type>) -> Theorem {
        let ax = self.k.axiom(&[], &standard_choice_axiom()).unwrap();
        match ty {
            None => ax,
            Some(ty) => {
                let s = Substitution::new([(Name::simple("A"), ty)], []).unwrap();
                self.k.subst(&s, &ax).unwrap()
            }
        }
    }

    fn finish(self) -> ArticleResult {
        let version = self.k.version();
        let assumptions = self.k.assumptions().to_vec();
        let signature = self.k.signature().clone();
        ArticleResult {
            version,
            exports: self.exports.into_iter().map(|(name, theorem)| Export { name, theorem }).collect(),
            assumptions,
            trace: self.k.into_trace(),
            signature,
            command_count: Default::default(),
            warnings: Vec::new(),
        }
    }
}

pub struct Generated {
    pub meta: CorpusMeta,
    /// (file name, article text)
    pub files: Vec<(String, String)>,
    pub classical: Vec<&'static str>,
}

fn package(name: &str, requires: &[&str], s: Session) -> (PackageMeta, String) {
    let names = s.exports.iter().map(|(n, _)| n.clone()).collect();
    let text = emit_article(&s.finish(), KernelVersion::V6).unwrap();
    let meta = PackageMeta {
        name: name.to_string(),
        author: "fixture".to_string(),
        date_retrieved: "2015-07-01".to_string(),
        requires: requires.iter().map(|r| r.to_string()).collect(),
        article: Some(format!("{name}.art")),
        theorem_names: names,
        ..PackageMeta::default()
    };
    (meta, text)
}

/// Six packages, sixteen proofs, six of them classical: three use choice
/// directly and three only through a classical lemma.
pub fn generate() -> Generated {
    let mut out = Vec::new();

    let mut s = Session::new();
    let th = s.k.refl(&var("x", Type::bool())).unwrap();
    let refl_bool = s.export("refl-bool", th);
    let ax = s.choice_at(None);
    let r = s.k.refl(&var("r", Type::bool())).unwrap();
    let th = s.k.deduct_antisym(&ax, &r).unwrap();
    let select_spec = s.export("select-spec", th);
    let redex = Term::app(Term::abs(Var::new(Name::simple("y"), Type::bool()), var("y", Type::bool())), var("z", Type::bool())).unwrap();
    let th = s.k.beta_conv(&redex).unwrap();
    s.export("beta-bool", th);
    out.push(package("logic", &[], s));

    let mut s = Session::new();
    let th = s.use_lemma(&select_spec, "f1");
    let s1 = s.export("select-spec-app", th);
    let th = s.use_lemma(&refl_bool, "f2");
    let s2 = s.export("refl-bool-app", th);
    let th = s.k.refl(&var("n", Type::ind())).unwrap();
    let s3 = s.export("refl-ind", th);
    out.push(package("sets", &["logic"], s));

    let mut s = Session::new();
    let ax = s.choice_at(None);
    let m = s.k.refl(&var("m", Type::ind())).unwrap();
    let th = s.k.deduct_antisym(&ax, &m).unwrap();
    let a1 = s.export("choice-direct", th);
    let th = s.k.refl(&var("k", fun(Type::ind(), Type::bool()))).unwrap();
    let a2 = s.export("refl-pred", th);
    let redex = Term::app(Term::abs(Var::new(Name::simple("y"), Type::ind()), var("y", Type::ind())), var("w", Type::ind())).unwrap();
    let th = s.k.beta_conv(&redex).unwrap();
    s.export("beta-ind", th);
    out.push(package("arith", &["logic"], s));

    let mut s = Session::new();
    let th = s.use_lemma(&s1, "g1");
    s.export("select-spec-app-app", th);
    let th = s.use_lemma(&s2, "g2");
    s.export("refl-bool-app-app", th);
    out.push(package("lists", &["sets"], s));

    let mut s = Session::new();
    let th = s.use_lemma(&a2, "h1");
    s.export("refl-pred-app", th);
    let th = s.use_lemma(&s3, "h2");
    s.export("refl-ind-app", th);
    let th = s.use_lemma(&a1, "h3");
    s.export("choice-direct-app", th);
    out.push(package("order", &["arith", "sets"], s));

    let mut s = Session::new();
    let ax = s.choice_at(Some(Type::ind()));
    let q = s.k.refl(&var("q", Type::bool())).unwrap();
    let th = s.k.deduct_antisym(&ax, &q).unwrap();
    s.export("choice-ind", th);
    let th = s.k.refl(&var("s", fun(Type::bool(), Type::ind()))).unwrap();
    s.export("refl-fn", th);
    out.push(package("misc", &[], s));

    let mut s = Session::new();
    let th = s.k.axiom(&[], &standard_choice_axiom()).unwrap();
    s.export("choice", th);
    let choice_text = emit_article(&s.finish(), KernelVersion::V6).unwrap();

    let mut files: Vec<(String, String)> = out.iter().map(|(m, t)| (format!("{}.art", m.name), t.clone())).collect();
    files.push(("choice.art".to_string(), choice_text));
    let meta = CorpusMeta {
        packages: out.into_iter().map(|(m, _)| m).collect(),
        choice_axiom: Some("choice.art".to_string()),
        ..CorpusMeta::default()
    };
    Generated {
        meta,
        files,
        classical: vec![
            "logic/select-spec",
            "sets/select-spec-app",
            "arith/choice-direct",
            "lists/select-spec-app-app",
            "order/choice-direct-app",
            "misc/choice-ind",
        ],
    }
}

/// The six-package corpus as loaded from disk.
pub fn load() -> (CorpusMeta, Vec<(PackageMeta, ArticleResult)>) {
    let meta = CorpusMeta::load(&packages_dir().join("meta.json")).unwrap();
    let pkgs = proofcloud_analyzer::load_corpus(&meta, &Default::default()).unwrap();
    (meta, pkgs)
}
