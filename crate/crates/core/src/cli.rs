//! Command-line surface: group files, certificate documents, subcommands
//! and exit codes.
//!
//! Group file grammar (line oriented, `#` starts a comment):
//!
//! ```text
//! field p=<prime> k=<int>
//! modulus c0 c1 ... ck        # optional, low to high
//! dim n
//! gram                        # optional; n rows follow
//! gen                         # n rows follow; repeat per generator
//! ```
//!
//! Entries are residues in [0, p) or, in an extension field, `(c0 ... c_{k-1})`.

use std::fmt::Write as _;

use clap::{Parser, Subcommand};

use crate::error::{Error, Hypothesis, Result};
use crate::field::{Elem, Field};
use crate::form::{find_invariant_form, QuadraticSpace};
use crate::group::{MatrixGroup, Perm, PermGroup, DEFAULT_BOUND};
use crate::linalg::Matrix;
use crate::modrep::is_irreducible;
use crate::monomial::{check_certificate, monomialize, theorem_sweep, MonomialCertificate, SignedPerm};
use crate::wreath::{maximality_check, transitive_solvable_subgroups, wreath_construct};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;
pub const EXIT_BOUND: i32 = 4;

/// Exit code for each failure class.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisViolated(_) | Error::CharacteristicTwo | Error::EvenDimension | Error::DegenerateForm => EXIT_HYPOTHESIS,
        Error::InvariantViolation(_)
        | Error::CertificateCheckFailed(_)
        | Error::ParityViolation(_)
        | Error::PairingViolation(_)
        | Error::NotCoprime
        | Error::NotSemisimple => EXIT_INVARIANT,
        Error::BoundExceeded(_) | Error::TooLarge(_) | Error::FieldTooLarge(_) | Error::NoSuitableWord => EXIT_BOUND,
        _ => EXIT_USAGE,
    }
}

/// The violated hypothesis behind an error, if any.
pub fn hypothesis_of(e: &Error) -> Option<Hypothesis> {
    match e {
        Error::HypothesisViolated(h) => Some(h.clone()),
        Error::CharacteristicTwo => Some(Hypothesis::CharacteristicTwo),
        Error::EvenDimension => Some(Hypothesis::EvenDimension),
        Error::DegenerateForm => Some(Hypothesis::DegenerateForm),
        _ => None,
    }
}

/// A parsed group file.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub field: Field,
    pub dim: usize,
    pub gram: Option<Matrix>,
    pub gens: Vec<Matrix>,
}

impl GroupFile {
    pub fn group(&self, bound: usize) -> Result<MatrixGroup> {
        Ok(MatrixGroup::new(&self.field, self.dim, self.gens.clone())?.with_bound(bound))
    }

    pub fn space(&self) -> Result<QuadraticSpace> {
        match &self.gram {
            Some(g) => QuadraticSpace::new(g.clone()),
            None => Err(Error::InvalidInput("no gram section".into())),
        }
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn tokens(line: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' {
            chars.next();
            let mut s = String::from("(");
            loop {
                match chars.next() {
                    Some(')') => break,
                    Some(ch) => s.push(ch),
                    None => return Err("unclosed parenthesis".into()),
                }
            }
            out.push(s);
        } else {
            let mut s = String::new();
            while let Some(&ch) = chars.peek() {
                if ch.is_whitespace() || ch == '(' {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            out.push(s);
        }
    }
    Ok(out)
}

fn parse_entry(field: &Field, tok: &str, line: usize) -> Result<Elem> {
    let p = field.characteristic();
    if let Some(inner) = tok.strip_prefix('(') {
        let cs = inner
            .split_whitespace()
            .map(|c| c.parse::<u32>().map_err(|_| parse_err(line, format!("bad residue '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        if cs.len() != field.degree() as usize {
            return Err(parse_err(line, format!("expected {} residues in '({inner})'", field.degree())));
        }
        return field.from_coeffs(&cs).map_err(|_| parse_err(line, format!("residue out of range in '({inner})'")));
    }
    let v: u32 = tok.parse().map_err(|_| parse_err(line, format!("bad entry '{tok}'")))?;
    if v >= p {
        return Err(parse_err(line, format!("residue {v} is not in [0, {p})")));
    }
    Ok(Elem(v))
}

fn key_value(tok: &str, key: &str, line: usize) -> Result<u32> {
    let v = tok
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected {key}=<int>, got '{tok}'")))?;
    v.parse().map_err(|_| parse_err(line, format!("bad integer in '{tok}'")))
}

/// Parses the group file grammar described in the module documentation.
pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let lines: Vec<(usize, Vec<String>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| tokens(l).map(|t| (i, t)).map_err(|m| parse_err(i, m)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, t)| !t.is_empty())
        .collect();
    let mut it = lines.into_iter().peekable();
    let (fl, ft) = it.next().ok_or_else(|| parse_err(0, "empty file"))?;
    if ft.len() != 3 || ft[0] != "field" {
        return Err(parse_err(fl, "expected 'field p=<prime> k=<int>'"));
    }
    let p = key_value(&ft[1], "p", fl)?;
    let k = key_value(&ft[2], "k", fl)?;
    let mut modulus = None;
    if let Some((ml, mt)) = it.peek() {
        if mt[0] == "modulus" {
            let ml = *ml;
            let cs = mt[1..]
                .iter()
                .map(|c| c.parse::<u32>().map_err(|_| parse_err(ml, format!("bad coefficient '{c}'"))))
                .collect::<Result<Vec<_>>>()?;
            if cs.len() != k as usize + 1 {
                return Err(parse_err(ml, format!("modulus needs {} coefficients", k + 1)));
            }
            modulus = Some(cs);
            it.next();
        }
    }
    let field = match modulus {
        Some(m) => Field::with_modulus(p, m),
        None => Field::new(p, k),
    }
    .map_err(|e| parse_err(fl, e.to_string()))?;
    let (dl, dt) = it.next().ok_or_else(|| parse_err(fl, "missing 'dim n'"))?;
    if dt.len() != 2 || dt[0] != "dim" {
        return Err(parse_err(dl, "expected 'dim n'"));
    }
    let dim: usize = dt[1].parse().map_err(|_| parse_err(dl, "bad dimension"))?;
    if dim == 0 {
        return Err(parse_err(dl, "dimension must be positive"));
    }
    let mut gram = None;
    let mut gens = Vec::new();
    while let Some((hl, ht)) = it.next() {
        if ht.len() != 1 || (ht[0] != "gram" && ht[0] != "gen") {
            return Err(parse_err(hl, format!("expected 'gram' or 'gen', got '{}'", ht.join(" "))));
        }
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (rl, rt) = it.next().ok_or_else(|| parse_err(hl, format!("'{}' needs {dim} rows", ht[0])))?;
            if rt.len() != dim {
                return Err(parse_err(rl, format!("row has {} entries, expected {dim}", rt.len())));
            }
            rows.push(rt.iter().map(|t| parse_entry(&field, t, rl)).collect::<Result<Vec<_>>>()?);
        }
        let m = Matrix::from_rows(&field, &rows);
        if ht[0] == "gram" {
            if gram.is_some() {
                return Err(parse_err(hl, "second gram section"));
            }
            gram = Some(m);
        } else {
            if !m.is_invertible() {
                return Err(parse_err(hl, "generator is not invertible"));
            }
            gens.push(m);
        }
    }
    Ok(GroupFile { field, dim, gram, gens })
}

fn render_matrix(out: &mut String, m: &Matrix) {
    let f = m.field();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| f.render(x)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

fn render_header(out: &mut String, field: &Field, dim: usize) {
    let _ = writeln!(out, "field p={} k={}", field.characteristic(), field.degree());
    if field.degree() > 1 {
        let cs: Vec<String> = field.modulus().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "modulus {}", cs.join(" "));
    }
    let _ = writeln!(out, "dim {dim}");
}

/// Group file text that [`parse_group_file`] reads back to the same data.
pub fn render_group_file(field: &Field, gram: Option<&Matrix>, gens: &[Matrix]) -> String {
    let dim = gram.map(|g| g.rows()).or_else(|| gens.first().map(|g| g.rows())).unwrap_or(0);
    let mut out = String::new();
    render_header(&mut out, field, dim);
    if let Some(g) = gram {
        out.push_str("gram\n");
        render_matrix(&mut out, g);
    }
    for g in gens {
        out.push_str("gen\n");
        render_matrix(&mut out, g);
    }
    out
}

/// Certificate document: basis rows, the scalar, one signed permutation per
/// generator, transport words (1-based generator indices in order of
/// application) and the verification result.
pub fn render_certificate(cert: &MonomialCertificate, verified: bool) -> String {
    let f = cert.space.field();
    let n = cert.space.dim();
    let mut out = String::from("# monomial certificate\n");
    render_header(&mut out, f, n);
    out.push_str("basis\n");
    for w in &cert.basis {
        let row: Vec<String> = w.iter().map(|&x| f.render(x)).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    let _ = writeln!(out, "scalar {}", f.render(cert.scalar));
    out.push_str("perm+signs\n");
    for (i, s) in cert.generator_images.iter().enumerate() {
        let _ = writeln!(out, "g{} {}", i + 1, s);
    }
    out.push_str("transport\n");
    for (level, t) in cert.transport.iter().enumerate() {
        let _ = writeln!(out, "level {} dim {} part {}", level + 1, t.dim, t.part_dim);
        for (i, w) in t.words.iter().enumerate() {
            let word: Vec<String> = w.iter().map(|g| format!("g{}", g + 1)).collect();
            let _ = writeln!(out, "z{} {}", i + 2, word.join(" "));
        }
    }
    let _ = writeln!(out, "verified: {verified}");
    out
}

/// Reads the basis, scalar and signed permutations of a certificate
/// document; transport words are informational and skipped.
pub fn parse_certificate(text: &str, space: &QuadraticSpace) -> Result<MonomialCertificate> {
    let f = space.field();
    let n = space.dim();
    let mut basis = Vec::new();
    let mut scalar = None;
    let mut images = Vec::new();
    let mut section = "";
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw.split('#').next().unwrap_or("")).map_err(|m| parse_err(line, m))?;
        if toks.is_empty() {
            continue;
        }
        match toks[0].as_str() {
            "field" | "modulus" | "dim" | "verified:" => continue,
            "basis" | "perm+signs" | "transport" => {
                section = if toks[0] == "basis" { "basis" } else if toks[0] == "perm+signs" { "perms" } else { "transport" };
                continue;
            }
            "scalar" => {
                let t = toks.get(1).ok_or_else(|| parse_err(line, "scalar needs a value"))?;
                scalar = Some(parse_entry(f, t, line)?);
                section = "";
                continue;
            }
            _ => {}
        }
        match section {
            "basis" => {
                if toks.len() != n {
                    return Err(parse_err(line, format!("basis row needs {n} entries")));
                }
                basis.push(toks.iter().map(|t| parse_entry(f, t, line)).collect::<Result<Vec<_>>>()?);
            }
            "perms" => {
                let mut perm = Vec::new();
                let mut signs = Vec::new();
                for t in &toks[1..] {
                    let (num, sign) = t.split_at(t.len().saturating_sub(1));
                    let idx: usize = num.parse().map_err(|_| parse_err(line, format!("bad image '{t}'")))?;
                    if idx == 0 {
                        return Err(parse_err(line, "images are 1-based"));
                    }
                    perm.push(idx - 1);
                    signs.push(match sign {
                        "+" => 1,
                        "-" => -1,
                        _ => return Err(parse_err(line, format!("bad sign in '{t}'"))),
                    });
                }
                images.push(SignedPerm { perm, signs });
            }
            "transport" => {}
            _ => return Err(parse_err(line, format!("unexpected '{}'", toks[0]))),
        }
    }
    Ok(MonomialCertificate {
        space: space.clone(),
        basis,
        scalar: scalar.ok_or_else(|| parse_err(0, "missing scalar"))?,
        generator_images: images,
        transport: vec![],
    })
}

#[derive(Parser, Debug)]
#[command(name = "orthomono", version, about = "Monomial certificates for solvable orthogonal groups over finite fields")]
pub struct Cli {
    /// Refuse any randomized code path (all algorithms here are deterministic).
    #[arg(long, global = true)]
    pub seedless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Monomialize the group in a group file and print the certificate.
    Analyze {
        path: std::path::PathBuf,
        /// Cap on enumerated group orders.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Ignore the gram section and search for an invariant nondegenerate form.
        #[arg(long)]
        no_form: bool,
        /// Report each hypothesis separately.
        #[arg(long)]
        explain: bool,
    },
    /// Check a certificate document against a group file.
    Verify {
        group: std::path::PathBuf,
        certificate: std::path::PathBuf,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Monomialize every solvable irreducible subgroup class of O_n(q).
    CheckTheorem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Emit the group file of O_1(q) ≀ K for the standard form.
    Wreath {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        /// trivial | cyclic | dihedral | symmetric | affine:<d> | perms:<images>;<images>...
        #[arg(long)]
        k: String,
    },
    /// List transitive solvable subgroups of S_n and check maximality of O_1(q) ≀ K.
    Maximal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: Option<u32>,
        /// Allow the n = 5, q = 3 maximality sweep.
        #[arg(long)]
        long: bool,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
}

/// What a command printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn failure(e: &Error) -> Output {
        let mut stderr = format!("error: {e}\n");
        if let Some(h) = hypothesis_of(e) {
            stderr.push_str(&format!("reason: {}\n", h.reason()));
        }
        Output { stdout: String::new(), stderr, code: exit_code(e) }
    }
}

/// Parses arguments and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.to_string();
            if code == EXIT_OK {
                Output { stdout: text, stderr: String::new(), code }
            } else {
                Output { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Analyze { path, bound, no_form, explain } => cmd_analyze(path, *bound, *no_form, *explain),
        Command::Verify { group, certificate, bound } => cmd_verify(group, certificate, *bound),
        Command::CheckTheorem { n, q, bound } => cmd_check_theorem(*n, *q, *bound),
        Command::Wreath { n, q, k } => cmd_wreath(*n, *q, k),
        Command::Maximal { n, q, long, bound } => cmd_maximal(*n, *q, *long, *bound),
    };
    match result {
        Ok(mut out) => {
            if cli.seedless {
                out.stderr.push_str("seedless: no randomized path taken\n");
            }
            out
        }
        Err(e) => Output::failure(&e),
    }
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn load_space(file: &GroupFile, no_form: bool) -> Result<QuadraticSpace> {
    if file.field.characteristic() == 2 {
        return Err(Error::HypothesisViolated(Hypothesis::CharacteristicTwo));
    }
    if no_form || file.gram.is_none() {
        let b = find_invariant_form(&file.field, file.dim, &file.gens, 1_000_000)?
            .ok_or(Error::HypothesisViolated(Hypothesis::NoInvariantForm))?;
        return QuadraticSpace::new(b);
    }
    file.space().map_err(|e| match e {
        Error::DegenerateForm => Error::HypothesisViolated(Hypothesis::DegenerateForm),
        other => other,
    })
}

/// Each hypothesis on its own line, for `--explain`.
fn explain(file: &GroupFile, no_form: bool, bound: usize) -> String {
    let mut out = String::new();
    let mut line = |name: &str, ok: Result<bool>| {
        let v = match ok {
            Ok(true) => "ok".to_string(),
            Ok(false) => "violated".to_string(),
            Err(e) => format!("unknown ({e})"),
        };
        let _ = writeln!(out, "hypothesis {name}: {v}");
    };
    line("odd characteristic", Ok(file.field.characteristic() != 2));
    line("odd dimension", Ok(file.dim % 2 == 1));
    let space = load_space(file, no_form);
    line("nondegenerate form", Ok(space.is_ok()));
    match &space {
        Ok(s) => line("isometries", file.gens.iter().try_fold(true, |acc, g| Ok(acc && s.is_isometry(g)?))),
        Err(_) => line("isometries", Ok(false)),
    }
    let group = file.group(bound);
    line("solvable", group.as_ref().map_err(|e| e.clone()).and_then(|g| g.is_solvable()));
    line("irreducible", group.as_ref().map_err(|e| e.clone()).and_then(|g| Ok(is_irreducible(g)?.is_irreducible())));
    out
}

pub fn cmd_analyze(path: &std::path::Path, bound: usize, no_form: bool, want_explain: bool) -> Result<Output> {
    let file = parse_group_file(&read(path)?)?;
    let run = || -> Result<String> {
        let space = load_space(&file, no_form)?;
        let group = file.group(bound)?;
        let cert = monomialize(&group, &space)?;
        let outcome = check_certificate(&cert, &group);
        if !outcome.ok {
            return Err(Error::CertificateCheckFailed(outcome.failure.unwrap_or_default()));
        }
        Ok(render_certificate(&cert, true))
    };
    match run() {
        Ok(text) => {
            let stdout = if want_explain { format!("{}{text}", explain(&file, no_form, bound)) } else { text };
            Ok(Output { stdout, stderr: String::new(), code: EXIT_OK })
        }
        Err(e) => {
            let mut out = Output::failure(&e);
            if want_explain {
                out.stdout = explain(&file, no_form, bound);
            }
            Ok(out)
        }
    }
}

pub fn cmd_verify(group_path: &std::path::Path, cert_path: &std::path::Path, bound: usize) -> Result<Output> {
    let file = parse_group_file(&read(group_path)?)?;
    let space = load_space(&file, false)?;
    let cert = parse_certificate(&read(cert_path)?, &space)?;
    let group = file.group(bound)?;
    let outcome = check_certificate(&cert, &group);
    if outcome.ok {
        Ok(Output { stdout: format!("verified: true\nelements checked: {}\n", outcome.elements_checked), stderr: String::new(), code: EXIT_OK })
    } else {
        Ok(Output {
            stdout: "verified: false\n".into(),
            stderr: format!("error: {}\n", outcome.failure.unwrap_or_default()),
            code: EXIT_INVARIANT,
        })
    }
}

pub fn cmd_check_theorem(n: usize, q: u32, bound: usize) -> Result<Output> {
    let r = theorem_sweep(n, q, bound)?;
    let mut out = String::new();
    let _ = writeln!(out, "O_{}({}) order {} solvable {}", r.n, r.q, r.ambient_order, r.ambient_solvable);
    let _ = writeln!(out, "solvable subgroup classes: {}", r.solvable_classes());
    let _ = writeln!(out, "irreducible classes: {}", r.irreducible_classes());
    for e in r.entries.iter().filter(|e| e.irreducible) {
        let status = match &e.outcome {
            Some(Ok(o)) if o.ok => format!("pass ({} elements checked)", o.elements_checked),
            Some(Ok(o)) => format!("FAIL {}", o.failure.clone().unwrap_or_default()),
            Some(Err(err)) => format!("FAIL {err}"),
            None => "skipped".into(),
        };
        let _ = writeln!(out, "  order {:>5}: {status}", e.order);
    }
    let _ = writeln!(out, "passed: {}", r.passed());
    let _ = writeln!(out, "failures: {}", r.failures());
    let _ = writeln!(out, "component methods agree: {}", r.all_components_agree());
    let _ = writeln!(out, "derived subgroups have determinant 1: {}", r.all_derived_det_one());
    let ok = r.failures() == 0 && r.all_components_agree() && r.all_derived_det_one();
    Ok(Output { stdout: out, stderr: String::new(), code: if ok { EXIT_OK } else { EXIT_INVARIANT } })
}

/// Parses a K-spec for `wreath`.
pub fn parse_k_spec(spec: &str, n: usize) -> Result<PermGroup> {
    let bad = || Error::InvalidInput(format!("unknown K spec '{spec}'"));
    match spec {
        "trivial" => Ok(PermGroup::trivial(n)),
        "cyclic" => Ok(PermGroup::cyclic(n)),
        "dihedral" => Ok(PermGroup::dihedral(n)),
        "symmetric" => Ok(PermGroup::symmetric(n)),
        _ => {
            if let Some(d) = spec.strip_prefix("affine:") {
                return PermGroup::affine(n, d.parse().map_err(|_| bad())?);
            }
            let body = spec.strip_prefix("perms:").ok_or_else(bad)?;
            let gens = body
                .split(';')
                .filter(|s| !s.is_empty())
                .map(|g| {
                    let images = g
                        .split(',')
                        .map(|x| x.trim().parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1).ok_or_else(bad))
                        .collect::<Result<Vec<_>>>()?;
                    Perm::new(images)
                })
                .collect::<Result<Vec<_>>>()?;
            PermGroup::new(n, gens)
        }
    }
}

fn prime_field_for(q: u32) -> Result<Field> {
    let (p, k) = crate::field::prime_power(q).ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::HypothesisViolated(Hypothesis::CharacteristicTwo));
    }
    Field::new(p, k)
}

pub fn cmd_wreath(n: usize, q: u32, spec: &str) -> Result<Output> {
    let field = prime_field_for(q)?;
    let k = parse_k_spec(spec, n)?;
    let space = QuadraticSpace::standard(&field, n)?;
    let w = wreath_construct(&k, &space)?;
    let mut text = format!("# O_1({q}) wr K, K = {spec}, order {}\n", w.group.order()?);
    text.push_str(&render_group_file(&field, Some(space.gram()), w.group.gens()));
    Ok(Output { stdout: text, stderr: String::new(), code: EXIT_OK })
}

pub fn cmd_maximal(n: usize, q: Option<u32>, long: bool, bound: usize) -> Result<Output> {
    let classes = transitive_solvable_subgroups(n, bound.min(crate::group::indexed::MAX_INDEXED_ORDER))?;
    let mut out = String::new();
    let _ = writeln!(out, "transitive solvable subgroup classes of S_{n}: {}", classes.len());
    for c in &classes {
        let gens: Vec<String> = c.group.gens().iter().map(|g| g.cycle_string()).collect();
        let _ = writeln!(out, "  order {:>4} maximal {} gens {}", c.order, c.maximal, gens.join(" "));
    }
    let mut code = EXIT_OK;
    if let Some(q) = q {
        let field = prime_field_for(q)?;
        let space = QuadraticSpace::standard(&field, n)?;
        let allowed = n <= 3 || (n == 5 && q == 3 && long);
        for c in classes.iter().filter(|c| c.maximal) {
            if !allowed {
                let _ = writeln!(out, "maximality of O_1({q}) wr K (order {}): skipped, ambient too large (use --long for n=5 q=3)", c.order);
                continue;
            }
            let w = wreath_construct(&c.group, &space)?;
            let r = maximality_check(&w, bound)?;
            let _ = writeln!(
                out,
                "maximality of O_1({q}) wr K (order {}): {} ({} extensions tested in O_{n}({q}) of order {})",
                c.order,
                r.is_maximal(),
                r.extensions_tested,
                r.ambient_order
            );
            if !r.is_maximal() {
                code = EXIT_INVARIANT;
            }
        }
    }
    Ok(Output { stdout: out, stderr: String::new(), code })
}
