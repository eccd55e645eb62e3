//! Command-line front end.
//!
//! Every command prints one JSON document on stdout. Failures print a
//! `{code, message, context}` object instead and exit with 2 for
//! mathematical rejections or 1 for usage, I/O and parse problems.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use jordanable::equations::{solve_inhom_comm, solve_lambda_comm, solve_transpose_pair};
use jordanable::exactfield::{format_rational, parse_rational, Rational};
use jordanable::jordan::{check_invariant_and_restrict, invariant_subspace_from, multiplicity_of};
use jordanable::liealg::{
    automorphism_space, casimir_basis, centre, classify_iso, compose_decomposable, decompose, derivation_space,
    is_nilpotent, lower_central_series, AutomorphismSpace,
};
use jordanable::multiplicity::{projectively_equal, DilationGroup};
use jordanable::oracle::{brute_solve, random_instance, Profile};
use jordanable::wire::{
    aleph_from_json, aleph_to_json, equation_spec_from_json, error_to_json, hints_from_json, matrix_from_json,
    matrix_to_json, solution_space_to_json, subspace_spec_from_json, vector_from_json,
    vector_to_json,
};
use jordanable::{
    AlmostAbelianAlgebra, Convention, Error, IrreduciblePoly, Matrix, MultiplicityFunction, SolutionSpace,
};
use serde_json::{json, Map, Value};

#[derive(Parser, Debug)]
#[command(name = "jordanable", version, about = "Exact Jordan forms and almost Abelian Lie algebras over Q")]
struct Cli {
    /// Human-readable output with partitioned matrices.
    #[arg(long, global = true)]
    pretty: bool,

    /// Companion convention: 1 general, 0 rotation-scaling for quadratics.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    epsilon: u8,

    /// JSON array of polynomials asserted irreducible.
    #[arg(long, global = true)]
    hints: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Similarity transform `S` and canonical form `J` with `S T S⁻¹ = J`.
    Jordanize { matrix: PathBuf },
    /// The multiplicity function of an operator.
    ExtractMult { matrix: PathBuf },
    /// Whether `A(T₁) ≅ A(T₂)`, with the scalar `λ` when they are.
    Classify {
        t1: PathBuf,
        t2: PathBuf,
        /// Also print the witness matrix.
        #[arg(long)]
        witness: bool,
    },
    /// Structured matrix equation solvers.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Structure of the almost Abelian algebra `A(ℵ)`.
    #[command(subcommand)]
    Lie(LieCommand),
    /// Brute-force reference solver and random fixtures.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Invariant subspaces.
    #[command(subcommand)]
    Invsub(InvsubCommand),
}

#[derive(Subcommand, Debug)]
enum SolveCommand {
    /// `X T = λ T X`.
    XtLtx {
        matrix: PathBuf,
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        lambda: Rational,
    },
    /// `Y T - T Y = T`.
    YtTyT { matrix: PathBuf },
    /// `Z J(ℵ) + J(ℵ)ᵀ Z = 0`.
    Zjt {
        #[arg(long)]
        aleph: PathBuf,
    },
}

#[derive(Args, Debug)]
struct AlephArg {
    /// Multiplicity function as a JSON list of `{"p", "n", "mult"}`.
    #[arg(long)]
    aleph: PathBuf,
}

#[derive(Subcommand, Debug)]
enum LieCommand {
    /// The centre, as vectors in the Abelian ideal.
    Centre(AlephArg),
    /// The `k`-th term of the lower central series.
    Lcs {
        #[command(flatten)]
        aleph: AlephArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Whether the algebra is nilpotent.
    Nilpotent(AlephArg),
    /// Split off the Abelian factor `W`.
    Decompose(AlephArg),
    /// Automorphism families, all listed ones or just `--lambda`.
    Aut {
        #[command(flatten)]
        aleph: AlephArg,
        #[arg(long, value_parser = parse_scalar, allow_negative_numbers = true)]
        lambda: Option<Rational>,
    },
    /// A basis of the derivation algebra.
    Der(AlephArg),
    /// Quadratic Casimir elements.
    Casimir(AlephArg),
    /// Whether two multiplicity functions give isomorphic algebras.
    Classify { first: PathBuf, second: PathBuf },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Solve an equation spec by Kronecker vectorization.
    Solve { spec: PathBuf },
    /// A seeded random operator with known multiplicity function.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_dim: usize,
    },
}

#[derive(Subcommand, Debug)]
enum InvsubCommand {
    /// Check that a list of vectors spans a `T`-invariant subspace.
    Check { matrix: PathBuf, vectors: PathBuf },
    /// Build an invariant subspace of `J(ℵ)` from its chain data.
    Make {
        spec: PathBuf,
        #[arg(long)]
        aleph: PathBuf,
    },
}

fn parse_scalar(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Why a command failed, with exit code and error object.
struct Failure {
    code: i32,
    body: Value,
}

impl Failure {
    fn lib(e: Error, context: Value) -> Self {
        Failure {
            code: if e.is_domain() { 2 } else { 1 },
            body: error_to_json(&e, context),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: 1,
            body: json!({"code": "io", "message": e.to_string(), "context": {"path": path.display().to_string()}}),
        }
    }
}

type Outcome = std::result::Result<Value, Failure>;

struct Ctx {
    conv: Convention,
    hints: Vec<IrreduciblePoly>,
    pretty: bool,
}

impl Ctx {
    fn json(&self, path: &Path) -> std::result::Result<Value, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::lib(Error::Parse(e.to_string()), json!({"path": path.display().to_string()})))
    }

    fn load<T>(&self, path: &Path, decode: impl FnOnce(&Value) -> jordanable::Result<T>) -> std::result::Result<T, Failure> {
        let v = self.json(path)?;
        decode(&v).map_err(|e| Failure::lib(e, json!({"path": path.display().to_string()})))
    }

    fn matrix(&self, path: &Path) -> std::result::Result<Matrix, Failure> {
        self.load(path, matrix_from_json)
    }

    fn aleph(&self, path: &Path) -> std::result::Result<MultiplicityFunction, Failure> {
        self.load(path, |v| aleph_from_json(v, &self.hints))
    }

    fn algebra(&self, path: &Path) -> std::result::Result<AlmostAbelianAlgebra, Failure> {
        let aleph = self.aleph(path)?;
        AlmostAbelianAlgebra::new(&aleph, self.conv).map_err(|e| Failure::lib(e, json!({"aleph": aleph.to_string()})))
    }
}

fn vectors_json(vs: &[Vec<Rational>]) -> Value {
    json!({"dim": vs.len(), "basis": vs.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>()})
}

fn pretty_space(s: &SolutionSpace, cuts: &[usize]) -> String {
    let mut out = format!("dim = {}\n", s.dim());
    if let Some(o) = &s.offset {
        out.push_str(&format!("offset:\n{}\n", o.render_partitioned(cuts, cuts)));
    }
    for (i, b) in s.basis.iter().enumerate() {
        out.push_str(&format!("basis[{i}]:\n{}\n", b.render_partitioned(cuts, cuts)));
    }
    out
}

/// Block cuts for matrices on `F e₀ ⊕ V`.
fn algebra_cuts(l: &AlmostAbelianAlgebra) -> Vec<usize> {
    std::iter::once(1).chain(l.form.cuts().into_iter().map(|c| c + 1)).collect()
}

fn dil_json(dil: &DilationGroup) -> Value {
    match dil {
        DilationGroup::AllScalars => json!("all"),
        DilationGroup::Finite(v) => Value::Array(v.iter().map(|q| json!(format_rational(q))).collect()),
    }
}

fn aut_json(aut: &AutomorphismSpace, only: Option<&Rational>) -> jordanable::Result<Value> {
    let scalars = match only {
        Some(nu) => vec![nu.clone()],
        None => aut.listed_scalars(),
    };
    let families = scalars
        .iter()
        .map(|nu| {
            let fam = aut.family(nu)?;
            let mut obj = Map::new();
            obj.insert("nu".into(), json!(format_rational(nu)));
            if let Value::Object(rest) = solution_space_to_json(&fam) {
                obj.extend(rest);
            }
            Ok(Value::Object(obj))
        })
        .collect::<jordanable::Result<Vec<_>>>()?;
    Ok(json!({"dil": dil_json(&aut.dil), "gamma_dim": aut.gamma_dim, "families": families}))
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let body = json!({"code": "usage", "message": e.to_string().trim_end(), "context": {}});
            let _ = writeln!(out, "{body}");
            let _ = write!(err, "{e}");
            return 1;
        }
    };
    match execute(&cli) {
        Ok((json, pretty)) => {
            let _ = match (cli.pretty, pretty) {
                (true, Some(text)) => writeln!(out, "{}", text.trim_end()),
                (true, None) => writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable")),
                (false, _) => writeln!(out, "{json}"),
            };
            0
        }
        Err(f) => {
            let _ = writeln!(out, "{}", f.body);
            let _ = writeln!(err, "error: {}", f.body["message"].as_str().unwrap_or("unknown"));
            f.code
        }
    }
}

fn execute(cli: &Cli) -> std::result::Result<(Value, Option<String>), Failure> {
    let conv = Convention::from_epsilon(cli.epsilon).map_err(|e| Failure::lib(e, json!({})))?;
    let mut ctx = Ctx {
        conv,
        hints: Vec::new(),
        pretty: cli.pretty,
    };
    if let Some(path) = &cli.hints {
        ctx.hints = ctx.load(path, hints_from_json)?;
    }
    let mut pretty = None;
    let value = match &cli.command {
        Command::Jordanize { matrix } => jordanize(&ctx, matrix, &mut pretty)?,
        Command::ExtractMult { matrix } => {
            let t = ctx.matrix(matrix)?;
            let aleph = multiplicity_of(&t, &ctx.hints).map_err(|e| Failure::lib(e, json!({"verb": "extract-mult"})))?;
            pretty = Some(aleph.to_string());
            json!({"aleph": aleph_to_json(&aleph), "display": aleph.to_string()})
        }
        Command::Classify { t1, t2, witness } => {
            let (a, b) = (ctx.matrix(t1)?, ctx.matrix(t2)?);
            let found = classify_iso(&a, &b, &ctx.hints).map_err(|e| Failure::lib(e, json!({"verb": "classify"})))?;
            match found {
                None => json!({"isomorphic": false}),
                Some(w) => {
                    let mut v = json!({"isomorphic": true, "lambda": format_rational(&w.lambda)});
                    if *witness {
                        v["witness"] = matrix_to_json(&w.matrix);
                    }
                    v
                }
            }
        }
        Command::Solve(cmd) => solve(&ctx, cmd, &mut pretty)?,
        Command::Lie(cmd) => lie(&ctx, cmd, &mut pretty)?,
        Command::Oracle(cmd) => oracle(&ctx, cmd)?,
        Command::Invsub(cmd) => invsub(&ctx, cmd)?,
    };
    Ok((value, pretty.filter(|_| ctx.pretty)))
}

fn jordanize(ctx: &Ctx, path: &Path, pretty: &mut Option<String>) -> Outcome {
    let t = ctx.matrix(path)?;
    let ctx_json = json!({"verb": "jordanize", "path": path.display().to_string()});
    let aleph = multiplicity_of(&t, &ctx.hints).map_err(|e| Failure::lib(e, ctx_json.clone()))?;
    let (s, form) = jordanable::jordan::similarity_transform_with(&t, &ctx.hints, ctx.conv)
        .map_err(|e| Failure::lib(e, ctx_json))?;
    debug_assert_eq!(aleph, form.aleph);
    let cuts = form.cuts();
    *pretty = Some(format!(
        "aleph = {}\nJ =\n{}\nS =\n{}",
        aleph,
        form.matrix.render_partitioned(&cuts, &cuts),
        s.render_partitioned(&[], &[])
    ));
    Ok(json!({
        "aleph": aleph_to_json(&aleph),
        "display": aleph.to_string(),
        "j": matrix_to_json(&form.matrix),
        "s": matrix_to_json(&s),
    }))
}

fn solve(ctx: &Ctx, cmd: &SolveCommand, pretty: &mut Option<String>) -> Outcome {
    let verb = |v: &str| json!({"verb": v});
    Ok(match cmd {
        SolveCommand::XtLtx { matrix, lambda } => {
            let t = ctx.matrix(matrix)?;
            let s = solve_lambda_comm(&t, lambda, &ctx.hints).map_err(|e| Failure::lib(e, verb("solve xt-ltx")))?;
            *pretty = Some(pretty_space(&s, &[]));
            solution_space_to_json(&s)
        }
        SolveCommand::YtTyT { matrix } => {
            let t = ctx.matrix(matrix)?;
            match solve_inhom_comm(&t, &ctx.hints).map_err(|e| Failure::lib(e, verb("solve yt-ty-t")))? {
                None => json!({"solvable": false}),
                Some(s) => {
                    *pretty = Some(pretty_space(&s, &[]));
                    let mut v = json!({"solvable": true});
                    if let (Value::Object(o), Value::Object(rest)) = (&mut v, solution_space_to_json(&s)) {
                        o.extend(rest);
                    }
                    v
                }
            }
        }
        SolveCommand::Zjt { aleph } => {
            let a = ctx.aleph(aleph)?;
            let s = solve_transpose_pair(&a, ctx.conv).map_err(|e| Failure::lib(e, verb("solve zjt")))?;
            let cuts = jordanable::jordan::canonical_form(&a, ctx.conv)
                .map(|f| f.cuts())
                .unwrap_or_default();
            *pretty = Some(pretty_space(&s, &cuts));
            solution_space_to_json(&s)
        }
    })
}

fn lie(ctx: &Ctx, cmd: &LieCommand, pretty: &mut Option<String>) -> Outcome {
    fn fail(verb: &'static str) -> impl Fn(Error) -> Failure {
        move |e| Failure::lib(e, json!({"verb": format!("lie {verb}")}))
    }
    Ok(match cmd {
        LieCommand::Centre(a) => vectors_json(&centre(&ctx.algebra(&a.aleph)?)),
        LieCommand::Lcs { aleph, k } => {
            let l = ctx.algebra(&aleph.aleph)?;
            let lk = lower_central_series(&l, *k).map_err(fail("lcs"))?;
            let mut v = vectors_json(&lk);
            v["k"] = json!(k);
            v
        }
        LieCommand::Nilpotent(a) => json!({"nilpotent": is_nilpotent(&ctx.algebra(&a.aleph)?)}),
        LieCommand::Decompose(a) => {
            let d = decompose(&ctx.algebra(&a.aleph)?);
            json!({"l0": aleph_to_json(&d.l0), "display": d.l0.to_string(), "w_dim": d.w_dim})
        }
        LieCommand::Aut { aleph, lambda } => {
            let l = ctx.algebra(&aleph.aleph)?;
            let aut = match automorphism_space(&l) {
                Err(Error::Decomposable { .. }) => compose_decomposable(&l).map_err(fail("aut"))?.aut,
                other => other.map_err(fail("aut"))?,
            };
            let v = aut_json(&aut, lambda.as_ref()).map_err(fail("aut"))?;
            let cuts = algebra_cuts(&l);
            let mut text = format!("Dil = {}\n", v["dil"]);
            let scalars = lambda.clone().map(|q| vec![q]).unwrap_or_else(|| aut.listed_scalars());
            for nu in scalars {
                let fam = aut.family(&nu).map_err(fail("aut"))?;
                text.push_str(&format!("nu = {}\n{}", format_rational(&nu), pretty_space(&fam, &cuts)));
            }
            *pretty = Some(text);
            v
        }
        LieCommand::Der(a) => {
            let l = ctx.algebra(&a.aleph)?;
            let der = derivation_space(&l).map_err(fail("der"))?;
            *pretty = Some(pretty_space(&der, &algebra_cuts(&l)));
            solution_space_to_json(&der)
        }
        LieCommand::Casimir(a) => {
            let l = ctx.algebra(&a.aleph)?;
            let cas = casimir_basis(&l).map_err(fail("casimir"))?;
            *pretty = Some(
                cas.iter()
                    .enumerate()
                    .map(|(i, c)| format!("Q{} = {}", i + 1, c))
                    .collect::<Vec<_>>()
                    .join("\n"),
            );
            json!({"dim": cas.len(), "basis": cas.iter().map(|c| matrix_to_json(&c.matrix)).collect::<Vec<_>>()})
        }
        LieCommand::Classify { first, second } => {
            let (a, b) = (ctx.aleph(first)?, ctx.aleph(second)?);
            match projectively_equal(&a, &b) {
                None => json!({"isomorphic": false}),
                Some(l) => json!({"isomorphic": true, "lambda": format_rational(&l)}),
            }
        }
    })
}

fn oracle(ctx: &Ctx, cmd: &OracleCommand) -> Outcome {
    Ok(match cmd {
        OracleCommand::Solve { spec } => {
            let spec = ctx.load(spec, equation_spec_from_json)?;
            match brute_solve(&spec).map_err(|e| Failure::lib(e, json!({"verb": "oracle solve"})))? {
                None => json!({"solvable": false}),
                Some(s) => solution_space_to_json(&s),
            }
        }
        OracleCommand::Random { seed, max_dim } => {
            let profile = Profile { max_dim: *max_dim, ..Profile::default() };
            let inst = random_instance(*seed, &profile).map_err(|e| Failure::lib(e, json!({"verb": "oracle random"})))?;
            json!({
                "seed": seed,
                "aleph": aleph_to_json(&inst.aleph),
                "display": inst.aleph.to_string(),
                "j": matrix_to_json(&inst.form.matrix),
                "s": matrix_to_json(&inst.s),
                "t": matrix_to_json(&inst.t),
            })
        }
    })
}

fn invsub(ctx: &Ctx, cmd: &InvsubCommand) -> Outcome {
    Ok(match cmd {
        InvsubCommand::Check { matrix, vectors } => {
            let t = ctx.matrix(matrix)?;
            let w = ctx.load(vectors, |v| {
                v.as_array()
                    .ok_or_else(|| Error::Parse("expected an array of vectors".into()))?
                    .iter()
                    .map(vector_from_json)
                    .collect::<jordanable::Result<Vec<_>>>()
            })?;
            match check_invariant_and_restrict(&t, &w, &ctx.hints)
                .map_err(|e| Failure::lib(e, json!({"verb": "invsub check"})))?
            {
                None => json!({"invariant": false}),
                Some(beth) => json!({"invariant": true, "beth": aleph_to_json(&beth), "display": beth.to_string()}),
            }
        }
        InvsubCommand::Make { spec, aleph } => {
            let a = ctx.aleph(aleph)?;
            let spec = ctx.load(spec, |v| subspace_spec_from_json(v, &ctx.hints))?;
            let form = jordanable::jordan::canonical_form(&a, ctx.conv)
                .map_err(|e| Failure::lib(e, json!({"verb": "invsub make"})))?;
            let w = invariant_subspace_from(&form, &spec).map_err(|e| Failure::lib(e, json!({"verb": "invsub make"})))?;
            vectors_json(&w)
        }
    })
}
