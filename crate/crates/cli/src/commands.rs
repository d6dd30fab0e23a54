use std::fs;
use std::io::Write as _;

use qmorse::reference::Q_GRID;
use qmorse::spectrum::potential_minimum;
use qmorse::thermo::{DEFAULT_BRACKET, DEFAULT_TOLERANCE};
use qmorse::{
    builtin_registry, critical_temperature, load_registry, potential, sweep, z_closed_form, z_direct,
    z_euler_maclaurin, DeformedSpectrum, Differentiation, EndpointMode, Error, MethodKind, Molecule,
    PartitionMethod, Registry, RegistryFormat,
};

use crate::table::{format_number, Cell, Table};
use crate::{status, BetaGrid, Cli, Command, Format, Global, Method};

#[derive(Debug)]
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure { status: status::INVALID_ARGUMENT, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = if e.is_registry_error() {
            status::REGISTRY
        } else if e.is_numerical() {
            status::NUMERICAL
        } else {
            status::INVALID_ARGUMENT
        };
        Failure { status, message: e.to_string() }
    }
}

type Outcome<T = ()> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let registry = registry(g)?;
    let table = match &cli.command {
        Command::Molecules => return emit(g, &molecules(&registry, g.format)),
        Command::Spectrum { molecule, q } => spectrum(lookup(&registry, molecule)?, *q)?,
        Command::Potential { molecule, q, x_min, x_max, x_steps } => {
            potential_curves(lookup(&registry, molecule)?, q, *x_min, *x_max, *x_steps)?
        }
        Command::Zfun { molecule, q, grid } => zfun(lookup(&registry, molecule)?, *q, &betas(grid, 20.0)?, g)?,
        Command::Thermo { molecule, q, method, grid } => {
            thermo(lookup(&registry, molecule)?, &[*q], &betas(grid, 50.0)?, *method, g)?
        }
        Command::Sweep { molecule, q, method, grid } => {
            thermo(lookup(&registry, molecule)?, &q_list(q), &betas(grid, 50.0)?, *method, g)?
        }
        Command::Tc { molecule, q, method } => {
            let molecules = match molecule {
                Some(name) => vec![lookup(&registry, name)?],
                None => registry.iter().collect(),
            };
            tc(&molecules, &q_list(q), *method, g)?
        }
    };
    let text = match g.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    emit(g, &text)
}

fn registry(g: &Global) -> Outcome<Registry> {
    match &g.registry {
        Some(path) => Ok(load_registry(path, RegistryFormat::from_path(path))?),
        None => Ok(builtin_registry()),
    }
}

fn lookup<'r>(registry: &'r Registry, name: &str) -> Outcome<&'r Molecule> {
    registry.get(name).ok_or_else(|| Failure {
        status: status::UNKNOWN_MOLECULE,
        message: format!(
            "unknown molecule {name:?}; registry has {}",
            registry.names().collect::<Vec<_>>().join(", ")
        ),
    })
}

fn emit(g: &Global, text: &str) -> Outcome {
    match &g.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::invalid(format!("cannot write output: {e}")))
        }
    }
}

fn q_list(q: &[f64]) -> Vec<f64> {
    if q.is_empty() {
        let mut grid = Q_GRID.to_vec();
        grid.sort_by(f64::total_cmp);
        grid
    } else {
        q.to_vec()
    }
}

fn betas(grid: &BetaGrid, default_max: f64) -> Outcome<Vec<f64>> {
    let lo = grid.beta_min.unwrap_or(0.1);
    let hi = grid.beta_max.unwrap_or(default_max);
    let n = grid.beta_steps;
    if !(lo > 0.0 && lo.is_finite()) {
        return Err(Failure::invalid(format!("--beta-min must be positive and finite, got {lo}")));
    }
    if !hi.is_finite() || n == 0 || (n > 1 && hi <= lo) {
        return Err(Failure::invalid(format!(
            "need --beta-max > --beta-min and --beta-steps >= 1, got [{lo}, {hi}] with {n} steps"
        )));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| match i {
            0 => lo,
            _ if i == n - 1 => hi,
            _ if grid.log_beta => lo * ((hi / lo).ln() * i as f64 / last).exp(),
            _ => lo + (hi - lo) * i as f64 / last,
        })
        .collect())
}

fn partition_method(method: Method, g: &Global) -> PartitionMethod {
    let endpoints = EndpointMode::from(g.endpoints);
    match MethodKind::from(method) {
        MethodKind::Direct => PartitionMethod::direct(),
        MethodKind::EulerMaclaurin => PartitionMethod::euler_maclaurin(g.em_order, endpoints),
        MethodKind::ClosedForm => PartitionMethod::closed_form(endpoints),
    }
}

fn differentiation(method: &PartitionMethod, g: &Global) -> Differentiation {
    match g.diff {
        Some(d) => d.into(),
        None if method.kind == MethodKind::Direct => Differentiation::Analytic,
        None => Differentiation::Numeric,
    }
}

fn make_spectrum(molecule: &Molecule, q: f64) -> Outcome<DeformedSpectrum> {
    Ok(DeformedSpectrum::new(molecule, q)?)
}

fn describe(t: &mut Table, s: &DeformedSpectrum) {
    t.meta("molecule", s.molecule().name())
        .meta("q", format_number(s.q()))
        .meta("nu", format_number(s.nu()))
        .meta("mu", format_number(s.mu()))
        .meta("n_max", s.n_max().map_or("none".to_string(), |n| n.to_string()));
    if s.is_empty() {
        t.meta("note", "no bound states: q nu < 1");
    }
}

fn describe_method(t: &mut Table, method: &PartitionMethod, diff: Differentiation) {
    t.meta("method", method.kind.tag());
    if method.kind != MethodKind::Direct {
        let endpoints = match method.endpoints {
            EndpointMode::LowerOnly => "paper",
            EndpointMode::Both => "full",
        };
        t.meta("em_order", method.em_order).meta("endpoints", endpoints);
    }
    t.meta("diff", diff.tag()).meta("beta_units", "1/eV");
}

fn molecules(registry: &Registry, format: Format) -> String {
    match format {
        Format::Csv => registry.to_csv(),
        Format::Json => registry.to_json() + "\n",
    }
}

fn spectrum(molecule: &Molecule, q: f64) -> Outcome<Table> {
    let s = make_spectrum(molecule, q)?;
    let mut t = Table::new(&["n", "E_n_eV", "deltaE_n_eV"]);
    describe(&mut t, &s);
    t.meta("energy_units", "eV");
    if let Ok(de) = s.excitation_energies() {
        for (n, (e, d)) in s.levels().iter().zip(de).enumerate() {
            t.push(vec![n.into(), (*e).into(), d.into()]);
        }
    }
    Ok(t)
}

fn potential_curves(molecule: &Molecule, qs: &[f64], x_min: f64, x_max: f64, steps: usize) -> Outcome<Table> {
    if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() || steps < 2 {
        return Err(Failure::invalid(format!(
            "need --x-min < --x-max and --x-steps >= 2, got [{x_min}, {x_max}] with {steps} steps"
        )));
    }
    let mut t = Table::new(&["q", "x_A", "V_eV"]);
    t.meta("molecule", molecule.name()).meta("alpha_invA", format_number(molecule.alpha()));
    for &q in qs {
        let (x0, v0) = potential_minimum(molecule, q)?;
        t.meta("minimum", format!("q={}: x={} A, V={} eV", format_number(q), format_number(x0), format_number(v0)));
        for i in 0..steps {
            let x = x_min + (x_max - x_min) * i as f64 / (steps - 1) as f64;
            t.push(vec![q.into(), x.into(), potential(x, molecule, q)?.into()]);
        }
    }
    Ok(t)
}

fn zfun(molecule: &Molecule, q: f64, betas: &[f64], g: &Global) -> Outcome<Table> {
    let s = make_spectrum(molecule, q)?;
    let em = partition_method(Method::Em, g);
    let closed = partition_method(Method::Closed, g);
    let mut t = Table::new(&["beta", "Z_direct", "Z_em", "Z_closed", "rel_dev_em", "rel_dev_closed"]);
    describe(&mut t, &s);
    describe_method(&mut t, &em, differentiation(&em, g));
    t.meta("rel_dev", "(Z - Z_direct) / Z_direct");
    if s.is_empty() {
        return Ok(t);
    }
    for &b in betas {
        let d = z_direct(&s, b)?.z;
        let e = z_euler_maclaurin(&s, b, &em)?.z;
        let c = z_closed_form(&s, b, &closed)?.z;
        t.push(vec![b.into(), d.into(), e.into(), c.into(), ((e - d) / d).into(), ((c - d) / d).into()]);
    }
    Ok(t)
}

fn thermo(molecule: &Molecule, qs: &[f64], betas: &[f64], method: Method, g: &Global) -> Outcome<Table> {
    let method = partition_method(method, g);
    let diff = differentiation(&method, g);
    let mut t = Table::new(&["q", "beta", "T_K", "F_eV", "U_eV", "S_kB", "C_kB", "method", "diff"]);
    if let [q] = qs {
        describe(&mut t, &make_spectrum(molecule, *q)?);
    } else {
        t.meta("molecule", molecule.name());
        for &q in qs {
            let s = make_spectrum(molecule, q)?;
            let n = s.n_max().map_or("none".to_string(), |n| n.to_string());
            t.meta("n_max", format!("q={}: {n}", format_number(q)));
        }
    }
    describe_method(&mut t, &method, diff);
    let table = sweep(molecule, qs, betas, &method, diff)?;
    if qs.len() > 1 {
        for q in &table.empty_qs {
            t.meta("note", format!("no bound states at q={}", format_number(*q)));
        }
    }
    for row in &table.rows {
        let p = &row.point;
        t.push(vec![
            row.q.into(),
            p.beta.into(),
            p.temperature.into(),
            p.free_energy.into(),
            p.internal_energy.into(),
            p.entropy.into(),
            p.heat_capacity.into(),
            method.kind.tag().into(),
            diff.tag().into(),
        ]);
    }
    Ok(t)
}

fn tc(molecules: &[&Molecule], qs: &[f64], method: Method, g: &Global) -> Outcome<Table> {
    let method = partition_method(method, g);
    let diff = differentiation(&method, g);
    let mut t = Table::new(&["molecule", "q", "beta_C", "T_C_K", "C_max"]);
    describe_method(&mut t, &method, diff);
    t.meta("bracket", format!("{} to {} 1/eV", DEFAULT_BRACKET.0, DEFAULT_BRACKET.1));
    for m in molecules {
        for &q in qs {
            let s = make_spectrum(m, q)?;
            if s.is_empty() {
                t.meta("note", format!("{} q={}: no bound states", m.name(), format_number(q)));
                continue;
            }
            let cp = critical_temperature(&s, DEFAULT_BRACKET, &method, diff, DEFAULT_TOLERANCE)?;
            if cp.at_boundary {
                t.meta("note", format!("{} q={}: maximum at the bracket edge", m.name(), format_number(q)));
            }
            t.push(vec![
                Cell::Text(m.name().to_string()),
                q.into(),
                cp.beta_c.into(),
                cp.t_c.into(),
                cp.c_max.into(),
            ]);
        }
    }
    Ok(t)
}
