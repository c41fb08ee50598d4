//! The article stack machine.

use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;

use proofcloud_kernel::{
    KernelVersion, Kernel, Name, ProofTrace, Sequent, Signature, Substitution, Term, Theorem, Type, Var,
};

use crate::command::{parse_line, Command, Line, Opcode};
use crate::error::{ArticleError, ErrorKind};
use crate::object::Object;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Strict,
    /// Leftover stack objects at the end produce a warning instead of an error.
    Lenient,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReplayOptions {
    pub mode: Mode,
    /// Runs the kernel in this mode regardless of the declared version.
    pub force_version: Option<KernelVersion>,
}

#[derive(Debug, Clone)]
pub struct Export {
    pub name: String,
    pub theorem: Theorem,
}

#[derive(Debug, Clone)]
pub struct ArticleResult {
    pub version: KernelVersion,
    pub exports: Vec<Export>,
    pub assumptions: Vec<Sequent>,
    pub trace: ProofTrace,
    pub signature: Signature,
    /// Tally per opcode word, with literals under `num` and `name`.
    pub command_count: BTreeMap<String, usize>,
    pub warnings: Vec<String>,
}

impl ArticleResult {
    pub fn command_total(&self) -> usize {
        self.command_count.values().sum()
    }
}

type Step<T> = Result<T, ErrorKind>;

pub struct Machine {
    kernel: Kernel,
    stack: Vec<Object>,
    dict: HashMap<i64, Object>,
    exports: Vec<Export>,
    counts: BTreeMap<String, usize>,
    commands: usize,
    forced: Option<KernelVersion>,
    line: usize,
}

impl Machine {
    pub fn new(opts: &ReplayOptions) -> Machine {
        Machine {
            kernel: Kernel::new(opts.force_version.unwrap_or(KernelVersion::V5)),
            stack: Vec::new(),
            dict: HashMap::new(),
            exports: Vec::new(),
            counts: BTreeMap::new(),
            commands: 0,
            forced: opts.force_version,
            line: 0,
        }
    }

    pub fn version(&self) -> KernelVersion {
        self.kernel.version()
    }

    pub fn stack(&self) -> &[Object] {
        &self.stack
    }

    pub fn dictionary_len(&self) -> usize {
        self.dict.len()
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// Parses and executes one physical line.
    pub fn feed_line(&mut self, text: &str, line_no: usize) -> Result<(), ArticleError> {
        match parse_line(text, line_no)? {
            Line::Command(cmd) => self.step(&cmd, line_no),
            Line::Comment | Line::Blank => Ok(()),
        }
    }

    pub fn step(&mut self, cmd: &Command, line_no: usize) -> Result<(), ArticleError> {
        self.line = line_no;
        self.commands += 1;
        *self.counts.entry(cmd.count_key().to_string()).or_default() += 1;
        let r = match cmd {
            Command::Num(n) => {
                self.stack.push(Object::Num(*n));
                Ok(())
            }
            Command::Name(n) => {
                self.stack.push(Object::Name(n.clone()));
                Ok(())
            }
            Command::Op(op) => self.exec(*op),
        };
        r.map_err(|kind| ArticleError::new(line_no, kind))
    }

    pub fn finish(self, mode: Mode) -> Result<ArticleResult, ArticleError> {
        let mut warnings = Vec::new();
        if !self.stack.is_empty() {
            match mode {
                Mode::Strict => {
                    return Err(ArticleError::new(self.line, ErrorKind::NonEmptyFinalStack(self.stack.len())))
                }
                Mode::Lenient => warnings.push(format!("{} objects left on the stack", self.stack.len())),
            }
        }
        let version = self.kernel.version();
        let assumptions = self.kernel.assumptions().to_vec();
        let signature = self.kernel.signature().clone();
        Ok(ArticleResult {
            version,
            exports: self.exports,
            assumptions,
            trace: self.kernel.into_trace(),
            signature,
            command_count: self.counts,
            warnings,
        })
    }

    fn pop(&mut self, op: Opcode) -> Step<Object> {
        self.stack.pop().ok_or(ErrorKind::StackUnderflow(op.word()))
    }

    fn push(&mut self, obj: Object) {
        self.stack.push(obj);
    }

    fn exec(&mut self, op: Opcode) -> Step<()> {
        if op.is_v6_only() && op != Opcode::Version && self.kernel.version() == KernelVersion::V5 {
            return Err(ErrorKind::Version(format!("`{op}` requires version 6")));
        }
        match op {
            Opcode::AbsTerm => {
                let body = self.pop(op).and_then(|o| as_term(op, o))?;
                let v = self.pop(op).and_then(|o| as_var(op, o))?;
                self.push(Object::Term(Term::abs(v, body)));
            }
            Opcode::AbsThm => {
                let th = self.pop(op).and_then(|o| as_thm(op, o))?;
                let v = self.pop(op).and_then(|o| as_var(op, o))?;
                let r = self.kernel.abs_thm(&v, &th)?;
                self.push(Object::Thm(r));
            }
            Opcode::AppTerm => {
                let x = self.pop(op).and_then(|o| as_term(op, o))?;
                let f = self.pop(op).and_then(|o| as_term(op, o))?;
                self.push(Object::Term(Term::app(f, x)?));
            }
            Opcode::AppThm | Opcode::DeductAntisym | Opcode::EqMp | Opcode::Trans | Opcode::ProveHyp => {
                let th2 = self.pop(op).and_then(|o| as_thm(op, o))?;
                let th1 = self.pop(op).and_then(|o| as_thm(op, o))?;
                let r = match op {
                    Opcode::AppThm => self.kernel.app_thm(&th1, &th2)?,
                    Opcode::DeductAntisym => self.kernel.deduct_antisym(&th1, &th2)?,
                    Opcode::EqMp => self.kernel.eq_mp(&th1, &th2)?,
                    Opcode::Trans => self.kernel.trans(&th1, &th2)?,
                    _ => self.kernel.prove_hyp(&th1, &th2)?,
                };
                self.push(Object::Thm(r));
            }
            Opcode::Assume | Opcode::Refl | Opcode::BetaConv => {
                let t = self.pop(op).and_then(|o| as_term(op, o))?;
                let r = match op {
                    Opcode::Assume => self.kernel.assume(&t)?,
                    Opcode::Refl => self.kernel.refl(&t)?,
                    _ => self.kernel.beta_conv(&t)?,
                };
                self.push(Object::Thm(r));
            }
            Opcode::Axiom => {
                let concl = self.pop(op).and_then(|o| as_term(op, o))?;
                let hyps = self.pop(op).and_then(|o| as_list(op, o, as_term))?;
                let th = self.kernel.axiom(&hyps, &concl)?;
                self.push(Object::Thm(th));
            }
            Opcode::Cons => {
                let mut tail = self.pop(op).and_then(|o| as_list(op, o, |_, o| Ok(o)))?;
                let head = self.pop(op)?;
                tail.insert(0, head);
                self.push(Object::List(tail));
            }
            Opcode::Const => {
                let n = self.pop(op).and_then(|o| as_name(op, o))?;
                self.push(Object::Const(n));
            }
            Opcode::ConstTerm => {
                let ty = self.pop(op).and_then(|o| as_type(op, o))?;
                let c = match self.pop(op)? {
                    Object::Const(n) => n,
                    other => return Err(shape(op, "constant", &other)),
                };
                let t = self.kernel.const_term(c, ty)?;
                self.push(Object::Term(t));
            }
            Opcode::Def => {
                let k = self.pop(op).and_then(|o| as_num(op, o))?;
                let top = self.stack.last().ok_or(ErrorKind::StackUnderflow(op.word()))?.clone();
                check_key(k)?;
                self.dict.insert(k, top);
            }
            Opcode::DefineConst => {
                let t = self.pop(op).and_then(|o| as_term(op, o))?;
                let n = self.pop(op).and_then(|o| as_name(op, o))?;
                let (_, th) = self.kernel.define_const(n.clone(), &t)?;
                self.push(Object::Const(n));
                self.push(Object::Thm(th));
            }
            Opcode::DefineConstList => {
                let th = self.pop(op).and_then(|o| as_thm(op, o))?;
                let pairs = self.pop(op).and_then(|o| as_list(op, o, |op, o| as_pair(op, o, as_name, as_var)))?;
                let (consts, th) = self.define_const_list(pairs, th)?;
                self.push(Object::List(consts.into_iter().map(Object::Const).collect()));
                self.push(Object::Thm(th));
            }
            Opcode::DefineTypeOp => {
                let th = self.pop(op).and_then(|o| as_thm(op, o))?;
                let ty_vars = self.pop(op).and_then(|o| as_list(op, o, as_name))?;
                let rep = self.pop(op).and_then(|o| as_name(op, o))?;
                let abs = self.pop(op).and_then(|o| as_name(op, o))?;
                let name = self.pop(op).and_then(|o| as_name(op, o))?;
                let def = self.kernel.define_type_op(name.clone(), abs.clone(), rep.clone(), ty_vars, &th)?;
                self.push(Object::TypeOp(name));
                self.push(Object::Const(abs));
                self.push(Object::Const(rep));
                self.push(Object::Thm(def.abs_rep));
                self.push(Object::Thm(def.rep_abs));
            }
            Opcode::HdTl => {
                let mut list = self.pop(op).and_then(|o| as_list(op, o, |_, o| Ok(o)))?;
                if list.is_empty() {
                    return Err(ErrorKind::Shape { op: op.word(), expected: "non-empty list", got: "[]".into() });
                }
                let head = list.remove(0);
                self.push(head);
                self.push(Object::List(list));
            }
            Opcode::Nil => self.push(Object::List(Vec::new())),
            Opcode::OpType => {
                let args = self.pop(op).and_then(|o| as_list(op, o, as_type))?;
                let name = match self.pop(op)? {
                    Object::TypeOp(n) => n,
                    other => return Err(shape(op, "type operator", &other)),
                };
                let ty = self.kernel.type_app(name, args)?;
                self.push(Object::Type(ty));
            }
            Opcode::Pop => {
                self.pop(op)?;
            }
            Opcode::Pragma => {
                let obj = self.pop(op)?;
                self.kernel.trace_mut().annotate(obj.to_string());
            }
            Opcode::Ref => {
                let k = self.pop(op).and_then(|o| as_num(op, o))?;
                let obj = self.dict.get(&k).cloned().ok_or(ErrorKind::MissingKey(k))?;
                self.push(obj);
            }
            Opcode::Remove => {
                let k = self.pop(op).and_then(|o| as_num(op, o))?;
                let obj = self.dict.remove(&k).ok_or(ErrorKind::MissingKey(k))?;
                self.push(obj);
            }
            Opcode::Subst => {
                let th = self.pop(op).and_then(|o| as_thm(op, o))?;
                let sigma = self.pop(op).and_then(|o| as_subst(op, o))?;
                for ty in sigma.ty_map().values() {
                    self.kernel.check_type(ty)?;
                }
                let r = self.kernel.subst(&sigma, &th)?;
                self.push(Object::Thm(r));
            }
            Opcode::Sym => {
                let th = self.pop(op).and_then(|o| as_thm(op, o))?;
                let r = self.kernel.sym(&th)?;
                self.push(Object::Thm(r));
            }
            Opcode::Thm => {
                let concl = self.pop(op).and_then(|o| as_term(op, o))?;
                let hyps = self.pop(op).and_then(|o| as_list(op, o, as_term))?;
                let th = self.pop(op).and_then(|o| as_thm(op, o))?;
                let claimed = Sequent::new(hyps, concl);
                if !claimed.alpha_eq(th.sequent()) {
                    return Err(ErrorKind::ExportMismatch(format!("claimed `{claimed}`, proved `{}`", th.sequent())));
                }
                if !self.exports.iter().any(|e| e.theorem.sequent().alpha_eq(th.sequent())) {
                    let name = format!("proof #{}", self.exports.len() + 1);
                    self.exports.push(Export { name, theorem: th });
                }
            }
            Opcode::TypeOp => {
                let n = self.pop(op).and_then(|o| as_name(op, o))?;
                self.push(Object::TypeOp(n));
            }
            Opcode::Var => {
                let ty = self.pop(op).and_then(|o| as_type(op, o))?;
                let n = self.pop(op).and_then(|o| as_name(op, o))?;
                self.kernel.check_type(&ty)?;
                self.push(Object::Var(Var::new(n, ty)));
            }
            Opcode::VarTerm => {
                let v = self.pop(op).and_then(|o| as_var(op, o))?;
                self.push(Object::Term(Term::var(v)));
            }
            Opcode::VarType => {
                let n = self.pop(op).and_then(|o| as_name(op, o))?;
                self.push(Object::Type(Type::var(n)));
            }
            Opcode::Version => {
                if self.commands != 2 || self.stack.len() != 1 {
                    return Err(ErrorKind::Version("`version` must be the first command".into()));
                }
                let v = self.pop(op).and_then(|o| as_num(op, o))?;
                let declared = match v {
                    5 => KernelVersion::V5,
                    6 => KernelVersion::V6,
                    other => return Err(ErrorKind::Version(format!("unsupported version {other}"))),
                };
                if self.forced.is_none() {
                    self.kernel.set_version(declared);
                }
            }
        }
        Ok(())
    }

    /// `{v1 = t1, ..., vn = tn} u G |- p` becomes `G |- p[c1/v1, ..., cn/vn]`
    /// with each `ci` defined as `ti`.
    fn define_const_list(&mut self, pairs: Vec<(Name, Var)>, th: Theorem) -> Step<(Vec<Name>, Theorem)> {
        let mut defs = Vec::new();
        let mut sigma = Vec::new();
        for (name, v) in &pairs {
            let rhs = th
                .hyps()
                .iter()
                .filter_map(|h| h.dest_eq())
                .find(|(l, _)| l.as_var() == Some(v))
                .map(|(_, r)| r.clone())
                .ok_or_else(|| ErrorKind::Shape {
                    op: "defineConstList",
                    expected: "a hypothesis defining each variable",
                    got: format!("no hypothesis `{} = ...`", v.name()),
                })?;
            let (c, def) = self.kernel.define_const(name.clone(), &rhs)?;
            sigma.push((v.clone(), c));
            defs.push(def);
        }
        let sigma = Substitution::new([], sigma)?;
        let mut th = self.kernel.subst(&sigma, &th)?;
        for def in &defs {
            th = self.kernel.prove_hyp(def, &th)?;
        }
        Ok((pairs.into_iter().map(|(n, _)| n).collect(), th))
    }
}

fn shape(op: Opcode, expected: &'static str, got: &Object) -> ErrorKind {
    ErrorKind::Shape { op: op.word(), expected, got: got.kind().to_string() }
}

fn check_key(k: i64) -> Step<()> {
    if k < 0 {
        Err(ErrorKind::MissingKey(k))
    } else {
        Ok(())
    }
}

fn as_num(op: Opcode, o: Object) -> Step<i64> {
    match o {
        Object::Num(n) => Ok(n),
        other => Err(shape(op, "number", &other)),
    }
}

fn as_name(op: Opcode, o: Object) -> Step<Name> {
    match o {
        Object::Name(n) => Ok(n),
        other => Err(shape(op, "name", &other)),
    }
}

fn as_type(op: Opcode, o: Object) -> Step<Type> {
    match o {
        Object::Type(t) => Ok(t),
        other => Err(shape(op, "type", &other)),
    }
}

fn as_var(op: Opcode, o: Object) -> Step<Var> {
    match o {
        Object::Var(v) => Ok(v),
        other => Err(shape(op, "variable", &other)),
    }
}

fn as_term(op: Opcode, o: Object) -> Step<Term> {
    match o {
        Object::Term(t) => Ok(t),
        other => Err(shape(op, "term", &other)),
    }
}

fn as_thm(op: Opcode, o: Object) -> Step<Theorem> {
    match o {
        Object::Thm(t) => Ok(t),
        other => Err(shape(op, "theorem", &other)),
    }
}

fn as_list<T>(op: Opcode, o: Object, each: impl Fn(Opcode, Object) -> Step<T>) -> Step<Vec<T>> {
    match o {
        Object::List(xs) => xs.into_iter().map(|x| each(op, x)).collect(),
        other => Err(shape(op, "list", &other)),
    }
}

fn as_pair<A, B>(
    op: Opcode,
    o: Object,
    fst: impl Fn(Opcode, Object) -> Step<A>,
    snd: impl Fn(Opcode, Object) -> Step<B>,
) -> Step<(A, B)> {
    match o {
        Object::List(xs) if xs.len() == 2 => {
            let mut it = xs.into_iter();
            let a = fst(op, it.next().expect("two elements"))?;
            let b = snd(op, it.next().expect("two elements"))?;
            Ok((a, b))
        }
        other => Err(shape(op, "pair", &other)),
    }
}

/// `[[[name, type], ...], [[var, term], ...]]`
fn as_subst(op: Opcode, o: Object) -> Step<Substitution> {
    let (tys, tms) = as_pair(
        op,
        o,
        |op, o| as_list(op, o, |op, o| as_pair(op, o, as_name, as_type)),
        |op, o| as_list(op, o, |op, o| as_pair(op, o, as_var, as_term)),
    )?;
    Ok(Substitution::new(tys, tms)?)
}

pub fn replay_reader(input: impl BufRead, opts: &ReplayOptions) -> Result<ArticleResult, ArticleError> {
    let mut m = Machine::new(opts);
    for (i, line) in input.lines().enumerate() {
        let line = line.map_err(|e| ArticleError::new(i + 1, ErrorKind::Io(e.to_string())))?;
        m.feed_line(&line, i + 1)?;
    }
    m.finish(opts.mode)
}

pub fn replay(text: &str, opts: &ReplayOptions) -> Result<ArticleResult, ArticleError> {
    replay_reader(text.as_bytes(), opts)
}
