//! Subcommand implementations. Each returns a rendered document.

use gravloc::gravenergy::{
    e0_discrepancy, two_source_force, two_source_force_analytic, two_source_interaction, TwoSourceSpec,
};
use gravloc::numeric::fit::{loglog_slope, logspace};
use gravloc::parallel::try_map;
use gravloc::regimes::{classify, compare_asymptotes, crossover_mu, transition_width};
use gravloc::solver::{solve_localization, total_energy};
use gravloc::sweep::{sweep, SweepRequest, SweepTable};
use gravloc::{Constants, Error, Execution, LumpSpec, Result};

use crate::config::{CliConfig, OutputFormat};
use crate::output::{Cell, Document};

/// Relative deviation from unity above which `e0-check` flags a mismatch.
pub const MISMATCH_TOL: f64 = 1e-6;
pub const MISMATCH_FLAG: &str = "closed-form/integral mismatch";

fn text(s: impl Into<String>) -> Cell {
    Cell::Text(s.into())
}

fn single(mut doc: Document) -> Document {
    doc.single = doc.rows.len() == 1;
    doc
}

fn spec_for(
    consts: &Constants,
    mu: f64,
    lambda0: Option<f64>,
    mode: gravloc::StationarityMode,
) -> Result<LumpSpec> {
    match lambda0 {
        Some(l) => LumpSpec::new(mu, l, mode),
        None => LumpSpec::condensed(consts, mu, mode),
    }
}

pub fn constants(consts: &Constants) -> Document {
    let mut doc = Document::new(vec!["G", "hbar", "c", "m_p", "rho_ref"]);
    doc.push(vec![
        Cell::Num(consts.g),
        Cell::Num(consts.hbar),
        Cell::Num(consts.c),
        Cell::Num(consts.m_p),
        Cell::Num(consts.rho_ref),
    ]);
    single(doc)
}

pub fn solve(consts: &Constants, cfg: &CliConfig, mu: f64, lambda0: Option<f64>) -> Result<Document> {
    let mut doc = Document::new(vec![
        "mu",
        "lambda0_cm",
        "lambda_prime_cm",
        "x",
        "K_log10",
        "regime",
        "e0_erg",
        "ekin_erg",
        "etotal_erg",
        "residual",
        "curvature_positive",
        "iterations",
        "mode",
    ]);
    for mode in cfg.mode.modes() {
        let spec = spec_for(consts, mu, lambda0, mode)?;
        let sol = solve_localization(consts, &spec)?;
        let energy = total_energy(consts, &spec, sol.lambda_prime)?;
        doc.push(vec![
            Cell::Num(mu),
            Cell::Num(sol.lambda0),
            Cell::Num(sol.lambda_prime),
            Cell::Num(sol.x),
            Cell::Log(sol.k_log10),
            text(classify(&sol).label.as_str()),
            Cell::Num(energy.e0),
            Cell::Num(energy.e_kin),
            Cell::Num(energy.e_total),
            Cell::Num(sol.residual),
            Cell::Bool(sol.curvature_positive),
            Cell::Int(sol.iterations as u64),
            text(mode.as_str()),
        ]);
    }
    Ok(single(doc))
}

pub struct SweepArgs {
    pub mu_min: f64,
    pub mu_max: f64,
    pub per_decade: usize,
    pub lambda0: Option<f64>,
}

pub fn run_sweep(consts: &Constants, cfg: &CliConfig, args: &SweepArgs) -> Result<String> {
    let mut req = SweepRequest::new(args.mu_min, args.mu_max, args.per_decade, cfg.mode.modes()[0]);
    req.modes = cfg.mode.modes();
    req.lambda0 = args.lambda0;
    let table = sweep(consts, &req, Execution::default())?;
    Ok(render_sweep(&table, cfg.output, cfg.precision))
}

fn render_sweep(table: &SweepTable, format: OutputFormat, digits: usize) -> String {
    match format {
        OutputFormat::Csv => table.to_csv(digits),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&table.to_json(digits)).expect("serializable") + "\n"
        }
        OutputFormat::Table => {
            let mut doc = Document::new(gravloc::sweep::CSV_HEADER.split(',').collect());
            for r in &table.rows {
                doc.push(vec![
                    Cell::Num(r.mu),
                    Cell::Num(r.lambda0_cm),
                    Cell::Num(r.lambda_prime_cm),
                    Cell::Num(r.x),
                    Cell::Log(r.k_log10),
                    text(r.regime.as_str()),
                    Cell::Num(r.e0_erg),
                    Cell::Num(r.ekin_erg),
                    Cell::Num(r.etotal_erg),
                    text(r.mode.as_str()),
                ]);
            }
            doc.render(OutputFormat::Table, digits)
        }
    }
}

pub fn asymptotics(consts: &Constants, cfg: &CliConfig, mu: f64) -> Result<Document> {
    let mut doc = Document::new(vec![
        "mu",
        "lambda_prime_cm",
        "small_mass_law_cm",
        "large_mass_law_cm",
        "small_deviation",
        "large_deviation",
        "regime",
        "mode",
    ]);
    for mode in cfg.mode.modes() {
        let a = compare_asymptotes(consts, mu, mode)?;
        doc.push(vec![
            Cell::Num(a.mu),
            Cell::Num(a.lambda_prime_cm),
            Cell::Num(a.small_mass_law_cm),
            Cell::Num(a.large_mass_law_cm),
            Cell::Num(a.small_deviation),
            Cell::Num(a.large_deviation),
            text(a.regime.as_str()),
            text(a.mode.as_str()),
        ]);
    }
    Ok(single(doc))
}

pub fn crossover(consts: &Constants, cfg: &CliConfig) -> Result<Document> {
    let mut doc = Document::new(vec![
        "crossover_mu",
        "mu_quantum",
        "mu_classical",
        "width_decades",
        "mode",
    ]);
    let rows = try_map(&cfg.mode.modes(), Execution::default(), |&mode| {
        let mu = crossover_mu(consts, mode)?;
        let w = transition_width(consts, mode)?;
        Ok::<_, Error>(vec![
            Cell::Num(mu),
            Cell::Num(w.mu_quantum),
            Cell::Num(w.mu_classical),
            Cell::Num(w.decades),
            text(mode.as_str()),
        ])
    })?;
    rows.into_iter().for_each(|r| doc.push(r));
    Ok(single(doc))
}

fn points_arg(points: usize) -> Result<()> {
    if points < 2 {
        return Err(Error::Domain {
            param: "points",
            reason: format!("must be >= 2, got {points}"),
        });
    }
    Ok(())
}

fn range_arg(param: &'static str, lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::Domain {
            param,
            reason: format!("need 0 < min < max, got [{lo}, {hi}]"),
        });
    }
    Ok(())
}

pub struct ProfileArgs {
    pub mu: f64,
    pub lambda0: Option<f64>,
    pub lp_min: f64,
    pub lp_max: f64,
    pub points: usize,
}

/// Total energy on a log grid of trial widths, one block per mode.
pub fn energy_profile(consts: &Constants, cfg: &CliConfig, args: &ProfileArgs) -> Result<Document> {
    range_arg("lp", args.lp_min, args.lp_max)?;
    points_arg(args.points)?;
    let mut doc = Document::new(vec![
        "lambda_prime_cm",
        "x",
        "e0_erg",
        "ekin_erg",
        "etotal_erg",
        "mode",
    ]);
    let grid = logspace(args.lp_min, args.lp_max, args.points);
    for mode in cfg.mode.modes() {
        let spec = spec_for(consts, args.mu, args.lambda0, mode)?;
        for &lp in &grid {
            let e = total_energy(consts, &spec, lp)?;
            doc.push(vec![
                Cell::Num(lp),
                Cell::Num(lp / spec.lambda0),
                Cell::Num(e.e0),
                Cell::Num(e.e_kin),
                Cell::Num(e.e_total),
                text(mode.as_str()),
            ]);
        }
    }
    Ok(doc)
}

pub struct ForceArgs {
    pub sigma: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub points: usize,
    pub m1: f64,
    pub m2: f64,
}

/// Interaction energy and force between two Gaussian sources, with the
/// fitted log-log slope of |F| against d.
pub fn force_law(consts: &Constants, args: &ForceArgs) -> Result<Document> {
    range_arg("d", args.d_min, args.d_max)?;
    points_arg(args.points)?;
    let base = TwoSourceSpec::new(args.m1, args.m2, args.sigma, args.d_min)?;
    let ds = logspace(args.d_min, args.d_max, args.points);
    let rows = try_map(&ds, Execution::default(), |&d| {
        let s = base.at(d);
        Ok::<_, Error>((
            d,
            two_source_interaction(consts, &s)?,
            two_source_force(consts, &s)?,
            two_source_force_analytic(consts, &s)?,
        ))
    })?;
    let forces: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let slope = loglog_slope(&ds, &forces)?;
    let mut doc = Document::new(vec![
        "d_cm",
        "energy_erg",
        "force_dyn",
        "force_analytic_dyn",
        "newton_force_dyn",
    ]);
    for (d, e, f, fa) in rows {
        let newton = -consts.g * args.m1 * args.m2 / (d * d);
        doc.push(vec![
            Cell::Num(d),
            Cell::Num(e),
            Cell::Num(f),
            Cell::Num(fa),
            Cell::Num(newton),
        ]);
    }
    doc.summary.push(("slope", Cell::Num(slope)));
    Ok(doc)
}

pub fn e0_check(consts: &Constants, lambda: f64, mass: f64) -> Result<Document> {
    let cmp = e0_discrepancy(consts, mass, lambda)?;
    let mismatch = (cmp.ratio - 1.0).abs() > MISMATCH_TOL;
    let mut doc = Document::new(vec![
        "lambda_cm",
        "mass_g",
        "closed_form_erg",
        "quadrature_erg",
        "ratio",
        "expected_ratio",
        "mismatch",
        "note",
    ]);
    doc.push(vec![
        Cell::Num(cmp.lambda_cm),
        Cell::Num(cmp.mass_g),
        Cell::Num(cmp.closed_form_erg),
        Cell::Num(cmp.quadrature_erg),
        Cell::Num(cmp.ratio),
        Cell::Num(cmp.expected_ratio),
        Cell::Bool(mismatch),
        text(if mismatch { MISMATCH_FLAG } else { "consistent" }),
    ]);
    Ok(single(doc))
}
