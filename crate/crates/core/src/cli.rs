//! Seeded self-test suites and the report format behind the `kubota-meta`
//! binary.
//!
//! A suite is a list of named checks. Each check runs a fixed number of
//! trials drawn from its own random stream and records the first three
//! failing inputs. Reports are deterministic functions of the field, seed,
//! trial count and height unless timing is requested.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::branching::{
    complementary_support, epsilon_sign_chain, minus_one_pairing, multiplicity, orbit_invariant,
    packet_product, trace_form, whittaker_datum_eval, NilpotentSl2, TauTwistModel,
};
use crate::characters::{
    count_agreeing_extensions, f_image_classes, index_fesq, omega_of, CentralTag, SquareClassGroup,
};
use crate::error::{Error, Result};
use crate::hilbert::{hilbert, hilbert_via_norm, pairing_table};
use crate::kubota::{
    beta, beta_sl2, check_cocycle, commutator_pairing, is_split_on_gl2f, Mat2, MetaElement,
};
use crate::local_field::{FieldElement, LocalField, ResidueElement, SquareClass};
use crate::sample::{Sampler, DEFAULT_HEIGHT};
use crate::sign::Sign;
use crate::weil::{
    chi_psi_eval, gamma, gamma_stability, snap_eighth_root, weil_index, AdditiveChar, EighthRoot,
};

pub const SCHEMA_VERSION: u32 = 1;
const MAX_WITNESSES: usize = 3;

/// Parse `Qp(p)`, `Qp(p)[unram:d]` or `Qp(p)[ram:d]`.
pub fn parse_field_spec(s: &str) -> Result<LocalField> {
    s.parse()
}

/// The fields exercised by `selftest-all` when no field is given.
pub fn default_fields() -> Vec<LocalField> {
    let mut v = Vec::new();
    for p in [3u64, 5, 7] {
        v.push(LocalField::base(p).expect("odd prime"));
    }
    for (p, d) in [(3u64, 2i64), (5, 2), (7, 3)] {
        v.push(LocalField::unramified(p, d).expect("d is a non-square unit"));
    }
    for p in [3u64, 5, 7] {
        v.push(LocalField::ramified(p, p as i64).expect("d = p"));
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::parse(0, format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub field_spec: String,
    pub trials: u64,
    pub seed: u64,
    pub height_bound: u64,
    pub output: OutputFormat,
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field_spec: "Qp(5)".into(),
            trials: 1000,
            seed: 0,
            height_bound: DEFAULT_HEIGHT,
            output: OutputFormat::Json,
            timing: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Cocycle,
    Split,
    Hilbert,
    Omega,
    Weil,
    Packets,
    All,
}

impl Suite {
    pub const ATOMIC: [Suite; 6] = [
        Suite::Hilbert,
        Suite::Cocycle,
        Suite::Split,
        Suite::Omega,
        Suite::Weil,
        Suite::Packets,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Cocycle => "cocycle",
            Suite::Split => "split",
            Suite::Hilbert => "hilbert",
            Suite::Omega => "omega",
            Suite::Weil => "weil",
            Suite::Packets => "packets",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cocycle" => Suite::Cocycle,
            "split" => Suite::Split,
            "hilbert" => Suite::Hilbert,
            "omega" => Suite::Omega,
            "weil" => Suite::Weil,
            "packets" => Suite::Packets,
            "all" => Suite::All,
            other => return Err(Error::UnknownSuite(other.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub field: String,
    pub suite: String,
    pub name: String,
    pub trials: u64,
    pub failures: u64,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub fields: Vec<String>,
    pub trials: u64,
    pub seed: u64,
    pub height: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckReport>,
    pub failures: u64,
    pub passed: bool,
}

impl Report {
    pub fn new(
        command: &str,
        config: &RunConfig,
        fields: &[LocalField],
        checks: Vec<CheckReport>,
    ) -> Self {
        let failures = checks.iter().map(|c| c.failures).sum();
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config: ConfigEcho {
                fields: fields.iter().map(|f| f.to_string()).collect(),
                trials: config.trials,
                seed: config.seed,
                height: config.height_bound,
            },
            checks,
            failures,
            passed: failures == 0,
        }
    }

    /// Process exit status: 0 iff every check passed.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => {
                let mut s = String::from("field,suite,check,trials,failures\n");
                for c in &self.checks {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        c.field, c.suite, c.name, c.trials, c.failures
                    );
                }
                s
            }
            OutputFormat::Text => {
                let mut s = String::new();
                for c in &self.checks {
                    let status = if c.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(
                        s,
                        "{status} {:<22} {:<8} {:<28} {:>6} trials {:>4} failures",
                        c.field, c.suite, c.name, c.trials, c.failures
                    );
                    for w in &c.witnesses {
                        let _ = writeln!(s, "     witness: {w}");
                    }
                }
                let _ = writeln!(s, "{} failures", self.failures);
                s
            }
        }
    }
}

/// Accumulates one check's outcome.
struct Check {
    field: LocalField,
    suite: &'static str,
    name: &'static str,
    trials: u64,
    failures: u64,
    witnesses: Vec<String>,
    started: Instant,
}

impl Check {
    fn new(field: LocalField, suite: &'static str, name: &'static str) -> Self {
        Check {
            field,
            suite,
            name,
            trials: 0,
            failures: 0,
            witnesses: Vec::new(),
            started: Instant::now(),
        }
    }

    fn record(&mut self, outcome: Result<bool>, witness: impl FnOnce() -> String) {
        self.trials += 1;
        let failed = match outcome {
            Ok(true) => return,
            Ok(false) => None,
            Err(e) => Some(e),
        };
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            let mut w = witness();
            if let Some(e) = failed {
                let _ = write!(w, " (error: {e})");
            }
            self.witnesses.push(w);
        }
    }

    fn finish(self, timing: bool) -> CheckReport {
        CheckReport {
            field: self.field.to_string(),
            suite: self.suite.to_string(),
            name: self.name.to_string(),
            trials: self.trials,
            failures: self.failures,
            witnesses: self.witnesses,
            elapsed_ms: timing.then(|| self.started.elapsed().as_millis() as u64),
        }
    }
}

struct Ctx<'a> {
    field: LocalField,
    config: &'a RunConfig,
    suite: &'static str,
    out: Vec<CheckReport>,
}

impl Ctx<'_> {
    fn sampler(&self, name: &str) -> Sampler {
        Sampler::new(self.field, self.config.seed, name, self.config.height_bound)
    }

    fn run(&mut self, name: &'static str, body: impl FnOnce(&mut Check, &mut Sampler)) {
        let mut check = Check::new(self.field, self.suite, name);
        let mut sampler = self.sampler(&format!("{}/{}", self.suite, name));
        body(&mut check, &mut sampler);
        self.out.push(check.finish(self.config.timing));
    }

    fn trials(&self) -> u64 {
        self.config.trials.max(1)
    }
}

/// Run one suite (or all of them) on the configured field.
pub fn run_suite(config: &RunConfig, suite: &str) -> Result<Report> {
    let field = parse_field_spec(&config.field_spec)?;
    let suite: Suite = suite.parse()?;
    let checks = suite_checks(field, config, suite)?;
    Ok(Report::new(suite.name(), config, &[field], checks))
}

/// Checks of `suite` on `field`, ordered by check name within each suite.
pub fn suite_checks(
    field: LocalField,
    config: &RunConfig,
    suite: Suite,
) -> Result<Vec<CheckReport>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::ATOMIC {
            if s == Suite::Split && field.is_base() {
                continue;
            }
            out.extend(suite_checks(field, config, s)?);
        }
        return Ok(out);
    }
    let mut ctx = Ctx {
        field,
        config,
        suite: suite.name(),
        out: Vec::new(),
    };
    match suite {
        Suite::Cocycle => cocycle_suite(&mut ctx),
        Suite::Split => split_suite(&mut ctx)?,
        Suite::Hilbert => hilbert_suite(&mut ctx),
        Suite::Omega => omega_suite(&mut ctx),
        Suite::Weil => weil_suite(&mut ctx, &AdditiveChar::standard(field)),
        Suite::Packets => packets_suite(&mut ctx),
        Suite::All => unreachable!(),
    }
    ctx.out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(ctx.out)
}

/// `selftest-all` over several fields.
pub fn selftest_all(config: &RunConfig, fields: &[LocalField]) -> Result<Report> {
    let mut checks = Vec::new();
    for &f in fields {
        checks.extend(suite_checks(f, config, Suite::All)?);
    }
    Ok(Report::new("selftest-all", config, fields, checks))
}

fn cocycle_suite(ctx: &mut Ctx) {
    let n = ctx.trials();
    ctx.run("cocycle_identity_gl2", |c, s| {
        for _ in 0..n {
            let (g1, g2, g3) = (s.gl2(), s.gl2(), s.gl2());
            c.record(check_cocycle(&g1, &g2, &g3), || format!("{g1} {g2} {g3}"));
        }
    });
    ctx.run("cocycle_identity_sl2", |c, s| {
        for _ in 0..n {
            let (g1, g2, g3) = (s.sl2(), s.sl2(), s.sl2());
            let ok = check_cocycle(&g1, &g2, &g3).and_then(|ok| {
                // on SL2 the extended cocycle is the SL2 formula
                Ok(ok && beta(&g1, &g2)? == beta_sl2(&g1, &g2)?)
            });
            c.record(ok, || format!("{g1} {g2} {g3}"));
        }
    });
    ctx.run("borel_formula", |c, s| {
        for _ in 0..n {
            let (g1, g2) = (s.upper_triangular(), s.upper_triangular());
            let ok = (|| Ok(beta(&g1, &g2)? == hilbert(g1.a(), g2.d())?))();
            c.record(ok, || format!("{g1} {g2}"));
        }
    });
    ctx.run("unipotent_trivial", |c, s| {
        for _ in 0..n {
            let (n1, n2) = (s.unipotent(), s.unipotent());
            c.record(beta(&n1, &n2).map(|b| b.is_plus()), || format!("{n1} {n2}"));
        }
    });
    ctx.run("meta_associativity", |c, s| {
        for _ in 0..n {
            let x = MetaElement::new(s.gl2(), s.sign());
            let y = MetaElement::new(s.gl2(), s.sign());
            let z = MetaElement::new(s.gl2(), s.sign());
            let ok = (|| Ok(x.mul(&y)?.mul(&z)? == x.mul(&y.mul(&z)?)?))();
            c.record(ok, || format!("{x} {y} {z}"));
        }
    });
    ctx.run("meta_inverse", |c, s| {
        for _ in 0..n {
            let x = MetaElement::new(s.gl2(), s.sign());
            let id = MetaElement::identity(x.g.field());
            let ok = (|| Ok(x.inv()?.mul(&x)? == id && x.mul(&x.inv()?)? == id))();
            c.record(ok, || x.to_string());
        }
    });
    ctx.run("commutator_pairing", |c, s| {
        for _ in 0..n {
            let z = s.nonzero_element();
            let g = s.gl2();
            let ok = (|| Ok(commutator_pairing(&z, &g)? == hilbert(&z, g.det())?))();
            c.record(ok, || format!("z={z} g={g}"));
        }
    });
}

fn split_suite(ctx: &mut Ctx) -> Result<()> {
    if ctx.field.is_base() {
        return Err(Error::BaseFieldInput(ctx.field.to_string()));
    }
    let n = ctx.trials();
    ctx.run("gl2f_split", |c, s| {
        for _ in 0..n {
            let (g1, g2) = (s.gl2_base(), s.gl2_base());
            c.record(is_split_on_gl2f(&g1, &g2), || format!("{g1} {g2}"));
        }
    });
    ctx.run("gl2f_split_homomorphism", |c, s| {
        for _ in 0..n {
            let (g1, g2) = (s.gl2_base(), s.gl2_base());
            let ok = (|| {
                let prod = MetaElement::lift(g1.clone()).mul(&MetaElement::lift(g2.clone()))?;
                Ok(prod == MetaElement::lift(g1.mul(&g2)))
            })();
            c.record(ok, || format!("{g1} {g2}"));
        }
    });
    Ok(())
}

fn hilbert_suite(ctx: &mut Ctx) {
    let n = ctx.trials();
    let field = ctx.field;
    ctx.run("bilinearity", |c, s| {
        for _ in 0..n {
            let (x1, x2, y) = (
                s.nonzero_element(),
                s.nonzero_element(),
                s.nonzero_element(),
            );
            let ok = (|| Ok(hilbert(&(&x1 * &x2), &y)? == hilbert(&x1, &y)? * hilbert(&x2, &y)?))();
            c.record(ok, || format!("{x1} {x2} {y}"));
        }
    });
    ctx.run("symmetry", |c, s| {
        for _ in 0..n {
            let (x, y) = (s.nonzero_element(), s.nonzero_element());
            c.record((|| Ok(hilbert(&x, &y)? == hilbert(&y, &x)?))(), || {
                format!("{x} {y}")
            });
        }
    });
    ctx.run("square_class_dependence", |c, s| {
        for _ in 0..n {
            let (x, y, t) = (
                s.nonzero_element(),
                s.nonzero_element(),
                s.nonzero_element(),
            );
            let xt2 = &x * &(&t * &t);
            c.record((|| Ok(hilbert(&xt2, &y)? == hilbert(&x, &y)?))(), || {
                format!("{x} {y} {t}")
            });
        }
    });
    ctx.run("steinberg", |c, s| {
        for _ in 0..n {
            let x = s.nonzero_element();
            let one_minus = &FieldElement::one(field) - &x;
            let ok = (|| {
                let minus = hilbert(&x, &-&x)?.is_plus();
                Ok(minus && (one_minus.is_zero() || hilbert(&x, &one_minus)?.is_plus()))
            })();
            c.record(ok, || x.to_string());
        }
    });
    ctx.run("nondegeneracy", |c, _| {
        let t = pairing_table(field);
        for (i, row) in t.iter().enumerate() {
            let degenerate = i != 0 && row.iter().all(|s| s.is_plus());
            let trivial_row_ok = i != 0 || row.iter().all(|s| s.is_plus());
            c.record(Ok(!degenerate && trivial_row_ok), || {
                format!("row {i}: {row:?}")
            });
        }
    });
    if !field.is_base() {
        ctx.run("base_pairs_trivial", |c, s| {
            for _ in 0..n {
                let (a, b) = (s.base_element(), s.base_element());
                c.record(hilbert(&a, &b).map(|h| h.is_plus()), || format!("{a} {b}"));
            }
        });
        ctx.run("norm_identity", |c, s| {
            for _ in 0..n {
                let a = s.f_element();
                let b = s.nonzero_element();
                let ok = (|| Ok(hilbert(&a.embed(field)?, &b)? == hilbert_via_norm(&a, &b)?))();
                c.record(ok, || format!("{a} {b}"));
            }
        });
    }
}

fn omega_suite(ctx: &mut Ctx) {
    let field = ctx.field;
    ctx.run("omega_torsor", |c, _| {
        let omega = omega_of(field, CentralTag::new("omega"));
        c.record(Ok(omega.len() == 4), || "size".into());
        for mu in &omega.members {
            let orbit: Vec<_> = SquareClass::all(field)
                .iter()
                .map(|a| mu.twisted(a))
                .collect();
            let distinct = (0..4).all(|i| (0..i).all(|j| orbit[i] != orbit[j]));
            let onto = orbit.iter().all(|m| omega.contains(m));
            c.record(Ok(distinct && onto), || format!("orbit of {mu}"));
        }
    });
    ctx.run("square_class_group", |c, _| {
        let g = SquareClassGroup::new(field);
        let t = g.table();
        for (i, row) in t.iter().enumerate() {
            c.record(Ok(row[i] == 0 && row[0] == i), || format!("row {i}"));
        }
        c.record(Ok(g.subgroups().len() == 5), || "subgroup count".into());
    });
    if !field.is_base() {
        ctx.run("index_formulas", |c, _| {
            let ok = (|| {
                let image = f_image_classes(field)?;
                let idx = index_fesq(field)?;
                let agree = count_agreeing_extensions(field)?;
                Ok(image.len() == 2 && idx == 2 && agree == idx)
            })();
            c.record(ok, || field.to_string());
        });
    }
}

/// Unit representatives of every nonzero residue class.
fn unit_lifts(field: LocalField) -> Vec<(FieldElement, ResidueElement)> {
    ResidueElement::all(field)
        .filter(|r| !r.is_zero())
        .map(|r| {
            let (r0, r1) = r.coords();
            let x = if r1 == 0 {
                FieldElement::from_int(field, r0 as i64)
            } else {
                let s = FieldElement::sqrt_d(field).expect("F_q with q = p^2 is unramified");
                &FieldElement::from_int(field, r0 as i64)
                    + &(&s * &FieldElement::from_int(field, r1 as i64))
            };
            (x, r)
        })
        .collect()
}

fn weil_suite(ctx: &mut Ctx, psi: &AdditiveChar) {
    let n = ctx.trials();
    let field = ctx.field;
    let psi = psi.clone();
    let snapped = |a: &FieldElement| -> Result<EighthRoot> {
        Ok(snap_eighth_root(gamma(&psi.twist(a)?)?)?.0)
    };
    ctx.run("weil_relation", |c, _| {
        for a in SquareClass::all(field) {
            for b in SquareClass::all(field) {
                let (a, b) = (a.rep(), b.rep());
                let ok = (|| {
                    let lhs = snapped(&a)? * snapped(&b)?;
                    let rhs = EighthRoot::from_sign(hilbert(&a, &b)?)
                        * snapped(&(&a * &b))?
                        * snapped(&FieldElement::one(field))?;
                    Ok(lhs == rhs)
                })();
                c.record(ok, || format!("a={a} b={b}"));
            }
        }
    });
    ctx.run("class_dependence", |c, s| {
        for class in SquareClass::all(field) {
            for _ in 0..4 {
                let t = s.nonzero_element();
                let lift = &class.rep() * &(&t * &t);
                let ok = (|| Ok(weil_index(&lift, &psi)? == weil_index(&class.rep(), &psi)?))();
                c.record(ok, || format!("{class} lifted by {t}"));
            }
        }
    });
    ctx.run("legendre_oracle", |c, _| {
        let Ok(psi_pi) = AdditiveChar::with_scale(field.uniformizer().inverse().expect("nonzero"))
        else {
            return;
        };
        for (u, r) in unit_lifts(field) {
            let ok = weil_index(&u, &psi_pi)
                .map(|g| g == EighthRoot::from_sign(r.quadratic_character()));
            c.record(ok, || format!("u={u}"));
        }
    });
    ctx.run("unit_triviality", |c, _| {
        for (u, _) in unit_lifts(field) {
            let ok = weil_index(&u, &AdditiveChar::standard(field)).map(|g| g == EighthRoot::ONE);
            c.record(ok, || format!("u={u}"));
        }
    });
    ctx.run("gauss_stability", |c, _| {
        for class in SquareClass::all(field) {
            let ok = (|| {
                let twisted = psi.twist(&class.rep())?;
                Ok(gamma_stability(&twisted)?.is_none_or(|d| d < 1e-9))
            })();
            c.record(ok, || class.to_string());
        }
    });
    ctx.run("chi_psi_genuine", |c, _| {
        let one = FieldElement::one(field);
        let ok = (|| {
            Ok(chi_psi_eval(&one, Sign::Plus, &psi)? == EighthRoot::ONE
                && chi_psi_eval(&one, Sign::Minus, &psi)? == EighthRoot::MINUS_ONE)
        })();
        c.record(ok, || "chi(1, -1)".into());
    });
    ctx.run("chi_psi_multiplicativity", |c, s| {
        for _ in 0..n {
            let (z1, z2) = (s.nonzero_element(), s.nonzero_element());
            let (e1, e2) = (s.sign(), s.sign());
            let ok = (|| {
                let m1 = MetaElement::new(Mat2::scalar(z1.clone())?, e1);
                let m2 = MetaElement::new(Mat2::scalar(z2.clone())?, e2);
                let m = m1.mul(&m2)?;
                let lhs = chi_psi_eval(&z1, e1, &psi)? * chi_psi_eval(&z2, e2, &psi)?;
                Ok(lhs == chi_psi_eval(m.g.a(), m.eps, &psi)?)
            })();
            c.record(ok, || format!("({z1},{e1}) ({z2},{e2})"));
        }
    });
}

fn packets_suite(ctx: &mut Ctx) {
    let n = ctx.trials();
    let field = ctx.field;
    let group = SquareClassGroup::new(field);
    ctx.run("packet_identities", |c, _| {
        for s in group.subgroups() {
            for discrete in [true, false] {
                let model = match TauTwistModel::new(s, discrete, &[group.identity()]) {
                    Ok(m) => m,
                    Err(_)
                        if !discrete
                            && s.members().iter().any(|a| !minus_one_pairing(a).is_plus()) =>
                    {
                        continue
                    }
                    Err(e) => {
                        c.record(Err(e), || format!("S={s} discrete={discrete}"));
                        continue;
                    }
                };
                let m = multiplicity(&model);
                let pp = packet_product(&model);
                let expected = if discrete { 8 } else { 4 };
                let ok = [1, 2, 4].contains(&m) && pp.product == expected && pp.m2 == s.len();
                c.record(Ok(ok), || format!("S={s} discrete={discrete} {pp:?}"));
            }
        }
    });
    if field.minus_one_is_square() {
        ctx.run("complementary_partition", |c, _| {
            let all = SquareClass::all(field);
            for i in 0..4 {
                for j in 0..i {
                    let support = [all[i], all[j]];
                    let ok = complementary_support(field, &support).map(|b| {
                        let mut idx: Vec<usize> = support
                            .iter()
                            .chain(support.map(|x| x.mul(&b)).iter())
                            .map(|x| x.index())
                            .collect();
                        idx.sort();
                        idx == [0, 1, 2, 3]
                    });
                    c.record(ok, || format!("{{{} {}}}", all[i], all[j]));
                }
            }
            let full = complementary_support(field, &all);
            c.record(Ok(full == Err(Error::NotACoset)), || "full support".into());
        });
    } else {
        ctx.run("epsilon_chain", |c, _| {
            for b in SquareClass::all(field).iter().filter(|b| b.is_ramified()) {
                for seed in [Sign::Plus, Sign::Minus] {
                    let ok = epsilon_sign_chain(field, b, seed).map(|ch| ch.holds);
                    c.record(ok, || format!("b={b} seed={seed}"));
                }
            }
        });
    }
    ctx.run("whittaker_trace", |c, s| {
        let psi = AdditiveChar::standard(field);
        for _ in 0..n {
            let (a, x) = (s.nonzero_element(), s.element());
            let ok = (|| {
                let z = FieldElement::zero(field);
                let y = NilpotentSl2::y_a(a.clone())?;
                let b = trace_form(y.entries(), &[z.clone(), x.clone(), z.clone(), z]);
                Ok(b == &a * &x && whittaker_datum_eval(&a, &x, &psi)? == psi.twist(&a)?.eval(&x))
            })();
            c.record(ok, || format!("a={a} x={x}"));
        }
    });
    ctx.run("orbit_invariance", |c, s| {
        for _ in 0..n {
            let y = NilpotentSl2::y_a(s.nonzero_element()).expect("nonzero");
            let y = y.conjugate(&s.sl2()).expect("conjugate of a nilpotent");
            let g = s.sl2();
            let ok = y
                .conjugate(&g)
                .map(|gy| orbit_invariant(&gy) == orbit_invariant(&y));
            c.record(ok, || format!("Y={y} g={g}"));
        }
    });
    ctx.run("orbit_bijection", |c, _| {
        let images: Vec<SquareClass> = SquareClass::all(field)
            .iter()
            .map(|a| orbit_invariant(&NilpotentSl2::y_a(a.rep()).expect("nonzero")))
            .collect();
        c.record(Ok(images == SquareClass::all(field)), || {
            format!("{images:?}")
        });
    });
}

/// `weil` command payload: `γ` on the four classes and the relation check.
#[derive(Clone, Debug, Serialize)]
pub struct WeilTable {
    pub schema: u32,
    pub field: String,
    pub psi_scale: String,
    pub classes: Vec<WeilRow>,
    pub relation: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilRow {
    pub class: String,
    pub rep: String,
    pub gamma_psi_a: String,
    pub weil_index: String,
    pub residual: f64,
}

pub fn weil_table(field: LocalField, psi: &AdditiveChar) -> Result<WeilTable> {
    let g1 = gamma(psi)?;
    let mut classes = Vec::new();
    for c in SquareClass::all(field) {
        let ga = gamma(&psi.twist(&c.rep())?)?;
        let (root, _) = snap_eighth_root(ga)?;
        let (idx, residual) = snap_eighth_root(ga / g1)?;
        classes.push(WeilRow {
            class: c.name().into(),
            rep: c.rep().to_string(),
            gamma_psi_a: root.to_string(),
            weil_index: idx.to_string(),
            residual: (residual * 1e12).round() / 1e12,
        });
    }
    let config = RunConfig::default();
    let mut ctx = Ctx {
        field,
        config: &config,
        suite: "weil",
        out: Vec::new(),
    };
    weil_suite(&mut ctx, psi);
    let relation = ctx
        .out
        .into_iter()
        .find(|c| c.name == "weil_relation")
        .expect("relation check ran");
    Ok(WeilTable {
        schema: SCHEMA_VERSION,
        field: field.to_string(),
        psi_scale: psi.scale().to_string(),
        classes,
        relation,
    })
}

/// `indices` command payload.
#[derive(Clone, Debug, Serialize)]
pub struct IndicesReport {
    pub schema: u32,
    pub field: String,
    pub sq_classes: usize,
    #[serde(rename = "index_FEsq")]
    pub index_fesq: usize,
    pub agreeing: usize,
    pub f_image: Vec<String>,
}

pub fn indices_report(field: LocalField) -> Result<IndicesReport> {
    Ok(IndicesReport {
        schema: SCHEMA_VERSION,
        field: field.to_string(),
        sq_classes: SquareClassGroup::new(field).order(),
        index_fesq: index_fesq(field)?,
        agreeing: count_agreeing_extensions(field)?,
        f_image: f_image_classes(field)?
            .members()
            .iter()
            .map(|c| c.name().to_string())
            .collect(),
    })
}

/// `omega` command payload.
#[derive(Clone, Debug, Serialize)]
pub struct OmegaReport {
    pub schema: u32,
    pub field: String,
    pub sq_classes: usize,
    pub members: Vec<String>,
    /// `twist_table[i][j]`: index of member `i` twisted by class `j`.
    pub twist_table: Vec<Vec<usize>>,
}

pub fn omega_report(field: LocalField) -> OmegaReport {
    let omega = omega_of(field, CentralTag::new("omega"));
    let classes = SquareClass::all(field);
    let twist_table = omega
        .members
        .iter()
        .map(|mu| {
            classes
                .iter()
                .map(|c| {
                    let t = mu.twisted(c);
                    omega
                        .members
                        .iter()
                        .position(|m| *m == t)
                        .expect("closed under twisting")
                })
                .collect()
        })
        .collect();
    OmegaReport {
        schema: SCHEMA_VERSION,
        field: field.to_string(),
        sq_classes: omega.len(),
        members: omega.members.iter().map(|m| m.to_string()).collect(),
        twist_table,
    }
}

/// `hilbert --table` payload.
#[derive(Clone, Debug, Serialize)]
pub struct HilbertTable {
    pub schema: u32,
    pub field: String,
    pub classes: Vec<String>,
    pub reps: Vec<String>,
    pub table: Vec<Vec<i8>>,
}

pub fn hilbert_table(field: LocalField) -> HilbertTable {
    let classes = SquareClass::all(field);
    HilbertTable {
        schema: SCHEMA_VERSION,
        field: field.to_string(),
        classes: classes.iter().map(|c| c.name().to_string()).collect(),
        reps: classes.iter().map(|c| c.rep().to_string()).collect(),
        table: pairing_table(field)
            .iter()
            .map(|row| row.iter().map(|s| s.value()).collect())
            .collect(),
    }
}

/// `multiplicity-table` CSV.
pub fn multiplicity_csv(field: LocalField) -> String {
    let mut s = String::from("S,discrete,m,m1,m2,product\n");
    for r in crate::branching::multiplicity_table(field) {
        let _ = writeln!(
            s,
            "\"{}\",{},{},{},{},{}",
            r.s, r.discrete, r.m, r.m1, r.m2, r.product
        );
    }
    s
}
