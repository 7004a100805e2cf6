//! Subcommands. Each handler returns its report text and whether the
//! checks it performed held.

use crate::input::{self, parse_cartan, parse_int_list, parse_word_for, InputError};
use crate::render;
use crate::suites;
use clap::{Args, Parser, Subcommand};
use qclust::bases::{verify_ls_straightening, BasisContext, Order};
use qclust::braid::{braid_order, braid_relation_check, eval_operator_word, generator_table};
use qclust::forms::{
    default_truncation, lambda_from_form, solve_compatible_lambda, FormKind, HeightFn, SkewForm,
};
use qclust::infinity::{
    block_equations, build_scenario, colimit_view, extend_quantization, upper_membership, ScenarioKind, SeedChain,
};
use qclust::seed::validate;
use qclust::tsystems::{interval_variables, verify_tsystems, verify_tsystems_bipartite};
use qclust::{build_dsd, build_rsd, word_move, Cartan, MutSeq, Move, Seed, SignedWord, Vid};
use std::fmt::Write;

#[derive(Parser, Debug)]
#[command(name = "qclust", version, about = "Exact quantum cluster algebra computations")]
pub struct Cli {
    /// Specialize printed Laurent polynomials at q = 1 (computation stays quantum).
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=1))]
    pub q: Option<u8>,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(subcommand)]
    Seed(SeedCmd),
    #[command(subcommand)]
    Word(WordCmd),
    #[command(subcommand)]
    Tsys(TsysCmd),
    #[command(subcommand)]
    Basis(BasisCmd),
    #[command(subcommand)]
    Braid(BraidCmd),
    #[command(subcommand)]
    Forms(FormsCmd),
    #[command(subcommand)]
    Inf(InfCmd),
    /// Run a verification suite (or `all`) and print a JSON summary per suite.
    Verify {
        suite: String,
    },
    /// Run the command described by a JSON job file.
    Job {
        path: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CartanArgs {
    /// Cartan type such as A2, B3, G2.
    #[arg(long)]
    pub cartan: Option<String>,
    /// Dense Cartan matrix, rows separated by ';'.
    #[arg(long = "cartan-matrix")]
    pub cartan_matrix: Option<String>,
    /// Symmetrizers for --cartan-matrix.
    #[arg(long)]
    pub sym: Option<String>,
}

impl CartanArgs {
    fn get(&self) -> Result<Cartan, InputError> {
        parse_cartan(self.cartan.as_deref(), self.cartan_matrix.as_deref(), self.sym.as_deref())
    }
}

#[derive(Args, Debug, Clone)]
pub struct SeedArgs {
    #[command(flatten)]
    pub cartan: CartanArgs,
    /// Signed word, e.g. 1,-2,1.
    #[arg(long)]
    pub word: String,
    /// Build dsd(word) over this prefix instead of rsd(word).
    #[arg(long)]
    pub prefix: Option<String>,
    /// Coxeter word fixing the height function (default: first occurrences in the word).
    #[arg(long)]
    pub coxeter: Option<String>,
    /// auto, classical, n or underline.
    #[arg(long, default_value = "auto")]
    pub form: String,
    #[arg(long)]
    pub truncation: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum SeedCmd {
    Validate(SeedArgs),
    Mutate {
        #[command(flatten)]
        seed: SeedArgs,
        /// Vertex to mutate at; repeat for a sequence.
        #[arg(long)]
        at: Vec<Vid>,
        /// Sign used in the exchange (the result does not depend on it).
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordCmd {
    Seed(SeedArgs),
    Move {
        #[command(flatten)]
        seed: SeedArgs,
        #[arg(long)]
        left: bool,
        #[arg(long)]
        flip: Option<usize>,
        /// Interval `j,k` of a braid move.
        #[arg(long)]
        braid: Option<String>,
        /// Replacement letters for --braid.
        #[arg(long)]
        gamma: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TsysCmd {
    Intervals(SeedArgs),
    Verify {
        #[command(flatten)]
        seed: SeedArgs,
        /// Use the height-function indexing for a bipartite Coxeter power.
        #[arg(long)]
        bipartite: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum BasisCmd {
    Kl {
        #[command(flatten)]
        seed: SeedArgs,
        /// Exponent vector of the standard monomial, e.g. 1,0,1,0,0,0.
        #[arg(long)]
        w: String,
        /// revlex or lex.
        #[arg(long, default_value = "revlex")]
        order: String,
    },
    Ls(SeedArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BraidArgs {
    #[command(flatten)]
    pub cartan: CartanArgs,
    #[arg(long)]
    pub coxeter: String,
    /// Context rsd(c^reps).
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value = "underline")]
    pub form: String,
}

#[derive(Subcommand, Debug)]
pub enum BraidCmd {
    Eval {
        #[command(flatten)]
        ctx: BraidArgs,
        /// Operators T_{a_1} ... T_{a_n}, applied right to left.
        #[arg(long, default_value = "")]
        ops: String,
        /// Generator `b,k` for y_{b,k}.
        #[arg(long, allow_hyphen_values = true)]
        gen: String,
    },
    Check(BraidArgs),
}

#[derive(Subcommand, Debug)]
pub enum FormsCmd {
    Lambda(SeedArgs),
    Nform(SeedArgs),
}

#[derive(Subcommand, Debug)]
pub enum InfCmd {
    Chain {
        #[command(flatten)]
        cartan: CartanArgs,
        #[arg(long)]
        coxeter: String,
        /// sd, ssd, usd or dsd.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        level: usize,
        #[arg(long, default_value = "underline")]
        form: String,
    },
    Extendq {
        #[command(flatten)]
        cartan: CartanArgs,
        #[arg(long)]
        coxeter: String,
        /// Extend from dsd_level to dsd_{level+1}.
        #[arg(long)]
        level: usize,
    },
    Member {
        #[command(flatten)]
        seed: SeedArgs,
        /// JSON term list in the initial cluster of the seed.
        #[arg(long)]
        element: String,
    },
}

/// Text of a command and whether its checks held.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, ok: true }
    }
}

type Res = Result<Report, InputError>;

fn parse_form(s: &str) -> Result<Option<FormKind>, InputError> {
    match s.to_ascii_lowercase().as_str() {
        "classical" => Ok(None),
        "n" => Ok(Some(FormKind::N)),
        "underline" => Ok(Some(FormKind::Underline)),
        _ => Err(InputError(format!("unknown form '{s}' (expected auto, classical, n or underline)"))),
    }
}

fn default_kind(c: &Cartan) -> FormKind {
    if c.syms().iter().all(|&d| d == c.syms()[0]) {
        FormKind::N
    } else {
        FormKind::Underline
    }
}

/// A word seed with the choices that produced it.
pub struct WordSeed {
    pub cartan: Cartan,
    pub word: SignedWord,
    pub seed: Seed,
    pub quantization: String,
    pub coxeter: Option<SignedWord>,
    pub height: Option<HeightFn>,
    pub kind: Option<FormKind>,
}

fn coxeter_for(a: &SeedArgs, c: &Cartan, w: &SignedWord) -> Result<Option<SignedWord>, InputError> {
    if let Some(s) = &a.coxeter {
        let cox = parse_word_for(s, c)?;
        if !cox.is_coxeter_for(c) {
            return Err(InputError(format!("{cox} is not a Coxeter word")));
        }
        return Ok(Some(cox));
    }
    let mut seen = Vec::new();
    for &x in w.letters() {
        if !seen.contains(&x.abs()) {
            seen.push(x.abs());
        }
    }
    let cox = SignedWord::new(seen)?;
    Ok(cox.is_coxeter_for(c).then_some(cox))
}

pub fn word_seed(a: &SeedArgs) -> Result<WordSeed, InputError> {
    let c = a.cartan.get()?;
    let w = parse_word_for(&a.word, &c)?;
    if w.is_empty() {
        return Err(InputError("empty word".into()));
    }
    if a.truncation.is_some_and(|t| !(1..=input::MAX_TRUNCATION).contains(&t)) {
        return Err(InputError(format!("truncation must lie in [1, {}]", input::MAX_TRUNCATION)));
    }
    let auto = a.form.eq_ignore_ascii_case("auto");
    let wanted = if auto { Some(default_kind(&c)) } else { parse_form(&a.form)? };
    if let Some(p) = &a.prefix {
        let prefix = parse_word_for(p, &c)?;
        let sd = build_dsd(&w, &prefix, &c)?;
        if wanted.is_none() {
            return Ok(WordSeed { cartan: c, word: w, seed: sd, quantization: "classical".into(), coxeter: None, height: None, kind: None });
        }
        return match solve_compatible_lambda(&sd, 4) {
            Ok(lam) => {
                let seed = sd.quantize(&lam)?;
                Ok(WordSeed { cartan: c, word: w, seed, quantization: "solved compatible Lambda".into(), coxeter: None, height: None, kind: None })
            }
            Err(_) if auto => Ok(WordSeed { cartan: c, word: w, seed: sd, quantization: "classical (no compatible Lambda found)".into(), coxeter: None, height: None, kind: None }),
            Err(e) => Err(e.into()),
        };
    }
    let base = build_rsd(&w, &c)?;
    let Some(kind) = wanted else {
        return Ok(WordSeed { cartan: c, word: w, seed: base, quantization: "classical".into(), coxeter: None, height: None, kind: None });
    };
    let cox = coxeter_for(a, &c, &w)?;
    let Some(cox) = cox else {
        if auto {
            return Ok(WordSeed { cartan: c, word: w, seed: base, quantization: "classical (word does not use every letter)".into(), coxeter: None, height: None, kind: None });
        }
        return Err(InputError("quantization needs --coxeter or a word using every letter".into()));
    };
    let xi = HeightFn::from_coxeter(&c, &cox)?;
    let trunc = a.truncation.unwrap_or_else(|| default_truncation(2 * (w.len() as i64 + 2)));
    let attempt = SkewForm::new(&c, kind, trunc)
        .and_then(|f| lambda_from_form(&w, &f, &xi))
        .and_then(|lam| base.quantize(&lam));
    let name = match kind {
        FormKind::N => "N",
        FormKind::Underline => "underline",
    };
    match attempt {
        Ok(sd) if validate(&sd).is_valid() => Ok(WordSeed {
            cartan: c,
            word: w,
            seed: sd,
            quantization: format!("{name} form, coxeter {cox}, xi {:?}", xi.0),
            coxeter: Some(cox),
            height: Some(xi),
            kind: Some(kind),
        }),
        _ if auto => Ok(WordSeed { cartan: c, word: w, seed: base, quantization: "classical (the form gives no compatible Lambda)".into(), coxeter: Some(cox), height: Some(xi), kind: None }),
        Ok(_) => Err(InputError(format!("the {name} form does not give a compatible Lambda on {w}"))),
        Err(e) => Err(e.into()),
    }
}

fn header(s: &mut String, ws: &WordSeed) {
    let _ = writeln!(s, "cartan: {:?}", ws.cartan.matrix());
    let _ = writeln!(s, "word: {}", ws.word);
    let _ = writeln!(s, "quantization: {}", ws.quantization);
}

fn seed_validate(a: &SeedArgs, q1: bool) -> Res {
    let ws = word_seed(a)?;
    let mut s = String::new();
    header(&mut s, &ws);
    s.push_str(&render::seed(&ws.seed, q1));
    let rep = validate(&ws.seed);
    for l in rep.lines() {
        let _ = writeln!(s, "{l}");
    }
    for (k, d) in &rep.deltas {
        let _ = writeln!(s, "delta_{k} = {d}");
    }
    let _ = writeln!(s, "valid: {}", rep.is_valid());
    Ok(Report { text: s, ok: rep.is_valid() })
}

fn seed_mutate(a: &SeedArgs, at: &[Vid], sign: i64, q1: bool) -> Res {
    if at.len() > input::MAX_MUTATIONS {
        return Err(InputError(format!("more than {} mutations", input::MAX_MUTATIONS)));
    }
    if sign != 1 && sign != -1 {
        return Err(InputError("--sign must be 1 or -1".into()));
    }
    let ws = word_seed(a)?;
    let mut cur = ws.seed.clone();
    for &k in at {
        cur = cur.mutate_with_sign(k, sign)?;
    }
    let mut s = String::new();
    header(&mut s, &ws);
    let steps: Vec<String> = at.iter().map(|k| k.to_string()).collect();
    let _ = writeln!(s, "mutations: {}", steps.join(","));
    s.push_str(&render::seed(&cur, q1));
    let _ = writeln!(s, "equals initial seed: {}", cur == ws.seed);
    let ok = validate(&cur).is_valid();
    let _ = writeln!(s, "valid: {ok}");
    Ok(Report { text: s, ok })
}

fn word_seed_cmd(a: &SeedArgs, q1: bool) -> Res {
    let ws = word_seed(a)?;
    let mut s = String::new();
    header(&mut s, &ws);
    s.push_str(&render::seed(&ws.seed, q1));
    Ok(Report::ok(s))
}

fn word_move_cmd(a: &SeedArgs, left: bool, flip: Option<usize>, braid: Option<&str>, gamma: Option<&str>) -> Res {
    let c = a.cartan.get()?;
    let w = parse_word_for(&a.word, &c)?;
    let mv = match (left, flip, braid) {
        (true, None, None) => Move::LeftReflection,
        (false, Some(j), None) => Move::Flip(j),
        (false, None, Some(jk)) => {
            let v = parse_int_list(jk)?;
            let g = parse_int_list(gamma.ok_or_else(|| InputError("--braid needs --gamma".into()))?)?;
            match v.as_slice() {
                [j, k] if *j >= 1 && *k >= 1 => Move::Braid { j: *j as usize, k: *k as usize, gamma: g },
                _ => return Err(InputError("--braid takes two positions j,k".into())),
            }
        }
        _ => return Err(InputError("give exactly one of --left, --flip, --braid".into())),
    };
    let (w2, ms) = word_move(&w, &mv, &c)?;
    let direct = build_rsd(&w, &c)?.apply_seq(&ms)?;
    let ok = direct.same_data(&build_rsd(&w2, &c)?);
    let mut s = String::new();
    let _ = writeln!(s, "word: {w}");
    let _ = writeln!(s, "new word: {w2}");
    s.push_str(&describe_seq(&ms));
    let _ = writeln!(s, "rsd(new word) = sequence applied to rsd(word): {ok}");
    Ok(Report { text: s, ok })
}

fn describe_seq(ms: &MutSeq) -> String {
    let steps: Vec<String> = ms.steps.iter().map(|k| k.to_string()).collect();
    let perm: Vec<String> = ms.final_perm.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    format!("mutations: [{}]\npermutation: [{}]\n", steps.join(","), perm.join(","))
}

fn tsys_intervals(a: &SeedArgs, q1: bool) -> Res {
    let ws = word_seed(a)?;
    if a.prefix.is_some() {
        return Err(InputError("interval variables are defined on rsd seeds".into()));
    }
    let tbl = interval_variables(&ws.word, &ws.cartan, &ws.seed)?;
    let mut s = String::new();
    header(&mut s, &ws);
    for ((j, k), z) in tbl.entries() {
        let _ = writeln!(s, "W[{j},{k}] = {}", render::laurent(z, q1));
    }
    Ok(Report::ok(s))
}

fn tsys_verify(a: &SeedArgs, bipartite: bool) -> Res {
    let ws = word_seed(a)?;
    let tbl = interval_variables(&ws.word, &ws.cartan, &ws.seed)?;
    let lines = if bipartite {
        let (Some(cox), Some(xi)) = (&ws.coxeter, &ws.height) else {
            return Err(InputError("--bipartite needs a Coxeter word".into()));
        };
        verify_tsystems_bipartite(&tbl, cox, xi)?
    } else {
        verify_tsystems(&tbl)?
    };
    let mut s = String::new();
    header(&mut s, &ws);
    for l in &lines {
        let _ = writeln!(s, "{}", l.describe());
    }
    let ok = lines.iter().all(|l| l.ok());
    let _ = writeln!(s, "{} identities, all hold: {ok}", lines.len());
    Ok(Report { text: s, ok })
}

fn parse_order(s: &str) -> Result<Order, InputError> {
    match s.to_ascii_lowercase().as_str() {
        "revlex" => Ok(Order::RevLex),
        "lex" => Ok(Order::Lex),
        _ => Err(InputError(format!("unknown order '{s}'"))),
    }
}

fn quantum_seed(a: &SeedArgs) -> Result<WordSeed, InputError> {
    let ws = word_seed(a)?;
    if !ws.seed.is_quantum() {
        return Err(InputError(format!("this needs a quantum seed; got {}", ws.quantization)));
    }
    Ok(ws)
}

fn basis_kl(a: &SeedArgs, w: &str, order: &str, q1: bool) -> Res {
    let ws = quantum_seed(a)?;
    let order = parse_order(order)?;
    let wv = parse_int_list(w)?;
    if wv.len() != ws.word.len() || wv.iter().any(|&x| !(0..=16).contains(&x)) {
        return Err(InputError(format!("--w needs {} entries in [0, 16]", ws.word.len())));
    }
    let wv: Vec<u32> = wv.into_iter().map(|x| x as u32).collect();
    let tbl = interval_variables(&ws.word, &ws.cartan, &ws.seed)?;
    let mut ctx = BasisContext::new(&tbl)?;
    let e = ctx.kl_expansion(&wv, order)?;
    let z = ctx.reconstruct(&e)?;
    let mut s = String::new();
    header(&mut s, &ws);
    let _ = writeln!(s, "L{wv:?} = {e}");
    let _ = writeln!(s, "L{wv:?} = {}", render::laurent(&z, q1));
    let ok = z.bar() == z;
    let _ = writeln!(s, "bar-invariant: {ok}");
    Ok(Report { text: s, ok })
}

fn basis_ls(a: &SeedArgs) -> Res {
    let ws = quantum_seed(a)?;
    let tbl = interval_variables(&ws.word, &ws.cartan, &ws.seed)?;
    let lines = verify_ls_straightening(&tbl)?;
    let mut s = String::new();
    header(&mut s, &ws);
    for l in &lines {
        let _ = writeln!(s, "{}", l.describe());
    }
    let ok = lines.iter().all(|l| l.ok);
    let _ = writeln!(s, "{} pairs, all straighten: {ok}", lines.len());
    Ok(Report { text: s, ok })
}

fn braid_context(a: &BraidArgs) -> Result<qclust::braid::GeneratorTable, InputError> {
    let c = a.cartan.get()?;
    let cox = parse_word_for(&a.coxeter, &c)?;
    if !cox.is_coxeter_for(&c) {
        return Err(InputError(format!("{cox} is not a Coxeter word")));
    }
    if a.reps == 0 || a.reps > input::MAX_REPS {
        return Err(InputError(format!("--reps must lie in [1, {}]", input::MAX_REPS)));
    }
    let kind = parse_form(&a.form)?.ok_or_else(|| InputError("braid evaluation needs a quantum form".into()))?;
    let xi = HeightFn::from_coxeter(&c, &cox)?;
    Ok(generator_table(&c, &cox, a.reps, &xi, kind)?)
}

fn braid_eval(a: &BraidArgs, ops: &str, gen: &str, q1: bool) -> Res {
    let gt = braid_context(a)?;
    let ops = parse_int_list(ops)?;
    if ops.len() > input::MAX_WORD_LEN || ops.iter().any(|&x| x < 1 || x > gt.cartan().rank() as i64) {
        return Err(InputError("operators must be letters of the Cartan matrix".into()));
    }
    let g = match parse_int_list(gen)?.as_slice() {
        [b, k] => (*b, *k),
        _ => return Err(InputError("--gen takes b,k".into())),
    };
    let z = eval_operator_word(&ops, g, &gt)?;
    let mut s = String::new();
    let _ = writeln!(s, "context: rsd({})", gt.table().word());
    let _ = writeln!(s, "T{ops:?} y[{},{}] = {}", g.0, g.1, render::laurent(&z, q1));
    let n = gt.table().word().len();
    for p in 1..=n {
        if gt.table().fundamental(p)? == z {
            let _ = writeln!(s, "equals W{p}");
        }
    }
    Ok(Report::ok(s))
}

fn braid_check(a: &BraidArgs) -> Res {
    let gt = braid_context(a)?;
    let c = gt.cartan().clone();
    let mut s = String::new();
    let _ = writeln!(s, "context: rsd({})", gt.table().word());
    let mut ok = true;
    for x in c.letters() {
        for y in c.letters().filter(|&y| y > x) {
            braid_order(x, y, &c)?;
            let gens: Vec<(i64, i64)> = c.letters().map(|b| (b, 0)).collect();
            for l in braid_relation_check(x, y, &gens, &gt)? {
                ok &= l.holds;
                let _ = writeln!(s, "{}", l.describe());
            }
        }
    }
    let _ = writeln!(s, "all hold: {ok}");
    Ok(Report { text: s, ok })
}

fn forms_lambda(a: &SeedArgs) -> Res {
    let ws = word_seed(a)?;
    let mut s = String::new();
    header(&mut s, &ws);
    let Some(lam) = ws.seed.lambda_form() else {
        let _ = writeln!(s, "no quantization");
        return Ok(Report { text: s, ok: false });
    };
    let sd = &ws.seed;
    let verts = sd.verts();
    let _ = writeln!(s, "Lambda:");
    s.push_str(&render::matrix(&lam.dense(verts)));
    let uf = sd.unfrozen();
    let prod: Vec<Vec<i64>> = verts
        .iter()
        .map(|&i| uf.iter().map(|&k| verts.iter().map(|&t| lam.get(i, t) * sd.b(t, k)).sum()).collect())
        .collect();
    let _ = writeln!(s, "Lambda B~:");
    s.push_str(&render::matrix(&prod));
    let rep = validate(sd);
    for l in rep.lines() {
        let _ = writeln!(s, "{l}");
    }
    let _ = writeln!(s, "compatible: {}", rep.is_valid());
    Ok(Report { text: s, ok: rep.is_valid() })
}

fn forms_nform(a: &SeedArgs) -> Res {
    let ws = word_seed(a)?;
    let (Some(xi), Some(kind)) = (&ws.height, ws.kind) else {
        return Err(InputError(format!("the form needs a quantized word seed; got {}", ws.quantization)));
    };
    let w = &ws.word;
    let trunc = a.truncation.unwrap_or_else(|| default_truncation(2 * (w.len() as i64 + 2)));
    let form = SkewForm::new(&ws.cartan, kind, trunc)?;
    let nodes: Vec<(i64, i64)> = (1..=w.len()).map(|k| qclust::roots::node_of_position(w, k, xi)).collect();
    let mut m = vec![vec![0; nodes.len()]; nodes.len()];
    for (j, &(a1, p)) in nodes.iter().enumerate() {
        for (k, &(b, q)) in nodes.iter().enumerate() {
            m[j][k] = form.eval(a1, p, b, q)?;
        }
    }
    let mut s = String::new();
    header(&mut s, &ws);
    let names: Vec<String> = nodes.iter().map(|(a, p)| format!("({a},{p})")).collect();
    let _ = writeln!(s, "nodes: {}", names.join(" "));
    s.push_str(&render::matrix(&m));
    Ok(Report::ok(s))
}

fn inf_chain(cartan: &CartanArgs, coxeter: &str, kind: &str, level: usize, form: &str, q1: bool) -> Res {
    let c = cartan.get()?;
    let cox = parse_word_for(coxeter, &c)?;
    if !cox.is_coxeter_for(&c) {
        return Err(InputError(format!("{cox} is not a Coxeter word")));
    }
    if level > input::MAX_LEVEL {
        return Err(InputError(format!("level above {}", input::MAX_LEVEL)));
    }
    let kind: ScenarioKind = kind.parse().map_err(|e: qclust::QError| InputError(e.to_string()))?;
    let fk = parse_form(form)?.ok_or_else(|| InputError("chains are quantized; use n or underline".into()))?;
    let mut s = String::new();
    let mut ok = true;
    if kind == ScenarioKind::DsdGhl {
        let ch = SeedChain::dsd_ghl(&c, &cox)?;
        let good = colimit_view(&ch, level);
        let _ = writeln!(s, "chain: {}", ch.name());
        ok = good.is_ok();
        let _ = writeln!(s, "good sub-seeds through level {level}: {ok}");
        s.push_str(&render::seed(&*ch.level(level)?, q1));
    } else {
        let sc = build_scenario(kind, &c, &cox, level, fk)?;
        let _ = writeln!(s, "{kind}_{level}: rsd({})", sc.word);
        let steps: Vec<String> = sc.steps.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(s, "mutations from sd_{}: [{}]", 2 * level, steps.join(","));
        for line in sc.verify_labels()? {
            ok &= line.ok;
            let _ = writeln!(s, "{}", line.describe());
        }
        let same = sc.matches_word_seed(&c)?;
        ok &= same;
        let _ = writeln!(s, "exchange matrix equals rsd of the word: {same}");
    }
    let _ = writeln!(s, "all hold: {ok}");
    Ok(Report { text: s, ok })
}

fn inf_extendq(cartan: &CartanArgs, coxeter: &str, level: usize) -> Res {
    let c = cartan.get()?;
    let cox = parse_word_for(coxeter, &c)?;
    if !cox.is_coxeter_for(&c) {
        return Err(InputError(format!("{cox} is not a Coxeter word")));
    }
    if level >= input::MAX_LEVEL {
        return Err(InputError(format!("level must be below {}", input::MAX_LEVEL)));
    }
    let ch = SeedChain::dsd_ghl(&c, &cox)?;
    let (sub, sup) = (ch.level(level)?, ch.level(level + 1)?);
    let i1 = sub.unfrozen();
    let i2 = sub.frozen();
    let i3: Vec<Vid> = sup.verts().iter().copied().filter(|&v| !sub.contains(v)).collect();
    let lam_sub = sub.lambda_form().ok_or_else(|| InputError("level is not quantized".into()))?;
    let ext = extend_quantization(&sup, &i1, &i2, &i3, &lam_sub)?;
    let k = i1[0];
    let alpha = -(sup.verts().iter().map(|&t| ext.get(k, t) * sup.b(t, k) * sup.d(k)).sum::<i64>());
    let eqs = block_equations(&sup, &i1, &i2, &i3, &ext, alpha);
    let list = |v: &[Vid]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut s = String::new();
    let _ = writeln!(s, "I1 = [{}]  I2 = [{}]  I3 = [{}]", list(&i1), list(&i2), list(&i3));
    let _ = writeln!(s, "alpha = {alpha}");
    let _ = writeln!(s, "Lambda on dsd_{}:", level + 1);
    s.push_str(&render::matrix(&ext.dense(sup.verts())));
    let _ = writeln!(s, "block equations: {eqs:?}");
    let ok = eqs == [true; 4];
    Ok(Report { text: s, ok })
}

fn inf_member(a: &SeedArgs, element: &str) -> Res {
    let ws = word_seed(a)?;
    let terms = input::parse_terms(element)?;
    let z = input::terms_to_laurent(&terms, ws.seed.reference())?;
    let m = upper_membership(&z, &ws.seed)?;
    let mut s = String::new();
    header(&mut s, &ws);
    let _ = writeln!(s, "element: {}", render::laurent(&z, false));
    let _ = writeln!(s, "member: {m}");
    Ok(Report::ok(s))
}

fn verify(name: &str) -> Res {
    let chosen: Vec<&suites::Suite> = if name == "all" {
        suites::SUITES.iter().collect()
    } else {
        vec![suites::find(name).ok_or_else(|| {
            let names: Vec<&str> = suites::SUITES.iter().map(|s| s.name).collect();
            InputError(format!("unknown suite '{name}' (known: all, {})", names.join(", ")))
        })?]
    };
    let reports: Vec<suites::SuiteReport> = std::thread::scope(|sc| {
        let hs: Vec<_> = chosen.iter().map(|s| sc.spawn(move || s.run())).collect();
        hs.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let mut s = String::new();
    for r in &reports {
        let _ = writeln!(s, "{}", r.json());
    }
    Ok(Report { text: s, ok: reports.iter().all(|r| r.pass) })
}

pub fn dispatch(cli: &Cli) -> Res {
    let q1 = cli.q.is_some();
    match &cli.cmd {
        Command::Seed(SeedCmd::Validate(a)) => seed_validate(a, q1),
        Command::Seed(SeedCmd::Mutate { seed, at, sign }) => seed_mutate(seed, at, *sign, q1),
        Command::Word(WordCmd::Seed(a)) => word_seed_cmd(a, q1),
        Command::Word(WordCmd::Move { seed, left, flip, braid, gamma }) => {
            word_move_cmd(seed, *left, *flip, braid.as_deref(), gamma.as_deref())
        }
        Command::Tsys(TsysCmd::Intervals(a)) => tsys_intervals(a, q1),
        Command::Tsys(TsysCmd::Verify { seed, bipartite }) => tsys_verify(seed, *bipartite),
        Command::Basis(BasisCmd::Kl { seed, w, order }) => basis_kl(seed, w, order, q1),
        Command::Basis(BasisCmd::Ls(a)) => basis_ls(a),
        Command::Braid(BraidCmd::Eval { ctx, ops, gen }) => braid_eval(ctx, ops, gen, q1),
        Command::Braid(BraidCmd::Check(a)) => braid_check(a),
        Command::Forms(FormsCmd::Lambda(a)) => forms_lambda(a),
        Command::Forms(FormsCmd::Nform(a)) => forms_nform(a),
        Command::Inf(InfCmd::Chain { cartan, coxeter, kind, level, form }) => {
            inf_chain(cartan, coxeter, kind, *level, form, q1)
        }
        Command::Inf(InfCmd::Extendq { cartan, coxeter, level }) => inf_extendq(cartan, coxeter, *level),
        Command::Inf(InfCmd::Member { seed, element }) => inf_member(seed, element),
        Command::Verify { suite } => verify(suite),
        Command::Job { .. } => Err(InputError("job files cannot be nested".into())),
    }
}

