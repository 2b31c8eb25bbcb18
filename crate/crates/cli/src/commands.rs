use std::collections::HashSet;

use fermat_core::arithmetic::format_rational;
use fermat_core::bt_bundle::{count_bt, count_on_twist, transfer_point, TwistVector};
use fermat_core::conics::fibre;
use fermat_core::counting::{
    count_n, count_nx_direct, count_nx_fibration, fermat_points, fit_log_power, CountReport,
};
use fermat_core::densities::{density_product, sigma_p, DEFAULT_GRID};
use fermat_core::sums::{
    coprime_pair_sum, d_sum, gfrak_lower, progression_sum, GClassFunction, PairQuery,
    ProgressionQuery, Summand,
};
use num_traits::ToPrimitive;

use crate::table::{Cell, Table};
use crate::{CliError, Command, Function, RunConfig};

pub(crate) fn execute(c: &RunConfig) -> Result<Table, CliError> {
    match c.command {
        Command::Count => Ok(count_table(
            &count_n(need(c.bound, "--bound")?),
            c.projective,
        )),
        Command::Countx => Ok(count_table(
            &count_nx_direct(need(c.bound, "--bound")?)?,
            c.projective,
        )),
        Command::Fibration => fibration(c),
        Command::Density => density(c),
        Command::Dsum => dsum(c),
        Command::Progsum => progsum(c),
        Command::Pairsum => pairsum(c),
        Command::Bt => bt(c),
        Command::Fit => fit(c),
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

fn exact(r: &num_rational::BigRational) -> Cell {
    Cell::Exact(format_rational(r))
}

fn count_table(r: &CountReport, projective: bool) -> Table {
    let div = if projective { 2 } else { 1 };
    let mut t = Table::new(&["bound", "count", "excluded_on_lines"]);
    t.push(vec![
        Cell::Int(r.bound.into()),
        Cell::Int((r.count / div).into()),
        Cell::Int((r.excluded_on_lines / div).into()),
    ]);
    t
}

fn fibration(c: &RunConfig) -> Result<Table, CliError> {
    let r = count_nx_fibration(need(c.bound, "--bound")?)?;
    let mut t = Table::new(&["s", "t", "m", "on_line", "count"]);
    for f in &r.breakdown {
        t.push(vec![
            Cell::Int(f.s.into()),
            Cell::Int(f.t.into()),
            Cell::Int(f.m.into()),
            Cell::Int(f.on_line.into()),
            Cell::Int(f.count.into()),
        ]);
    }
    Ok(t)
}

fn density(c: &RunConfig) -> Result<Table, CliError> {
    let f = fibre(need(c.s, "--s")?, need(c.t, "--t")?)?;
    let mut t = Table::new(&["place", "value", "stabilized_at"]);
    if let Some(p) = c.p {
        let d = sigma_p(&f, p)?;
        t.push(vec![
            Cell::Int(p.into()),
            exact(&d.value),
            Cell::Int(d.stabilized_at.into()),
        ]);
        return Ok(t);
    }
    let profile = density_product(&f, c.pmax, DEFAULT_GRID)?;
    for d in profile.finite.values() {
        t.push(vec![
            Cell::Int(d.p.into()),
            exact(&d.value),
            Cell::Int(d.stabilized_at.into()),
        ]);
    }
    t.push(vec![
        Cell::Text("inf".into()),
        Cell::Float(profile.sigma_infinity.value),
        Cell::Empty,
    ]);
    t.push(vec![
        Cell::Text("tail_lower_bound".into()),
        exact(&profile.tail_lower_bound),
        Cell::Empty,
    ]);
    t.push(vec![
        Cell::Text("summand_lower_bound".into()),
        Cell::Float(profile.lower_bound()),
        Cell::Empty,
    ]);
    t.push(vec![
        Cell::Text("full_product".into()),
        Cell::Float(profile.full_product()),
        Cell::Empty,
    ]);
    Ok(t)
}

fn dsum(c: &RunConfig) -> Result<Table, CliError> {
    let x = need(c.x, "--x")?;
    let mut t = Table::new(&["kind", "n", "x", "value", "approx"]);
    let d = d_sum(x)?;
    t.push(vec![
        Cell::Text("d".into()),
        Cell::Empty,
        Cell::Int(x.into()),
        exact(&d),
        approx(&d),
    ]);
    if x >= 4 {
        let g = gfrak_lower(x)?;
        for (n, d) in &g.levels {
            t.push(vec![
                Cell::Text("level".into()),
                Cell::Int((*n).into()),
                Cell::Int((1u64 << n).into()),
                exact(d),
                approx(d),
            ]);
        }
        t.push(vec![
            Cell::Text("dyadic_lower".into()),
            Cell::Empty,
            Cell::Int(x.into()),
            exact(&g.aggregate),
            approx(&g.aggregate),
        ]);
    }
    Ok(t)
}

fn approx(r: &num_rational::BigRational) -> Cell {
    r.to_f64().map_or(Cell::Empty, Cell::Float)
}

fn opt_float(v: Option<f64>) -> Cell {
    v.map_or(Cell::Empty, Cell::Float)
}

fn progsum(c: &RunConfig) -> Result<Table, CliError> {
    let a = match c.residue.as_slice() {
        [] => 0,
        [a] => *a,
        _ => return Err(CliError::Usage("progsum takes a single --residue".into())),
    };
    let mut q = ProgressionQuery::new(need(c.x, "--x")?, a, c.modulus);
    let summand = match c.function {
        Function::OneStarChi3 => Summand::OneStarChi3,
        Function::RTilde => {
            q.squarefree = true;
            Summand::Function(GClassFunction::r_tilde())
        }
    };
    let r = progression_sum(&q, &summand, true)?;
    let value = r
        .exact_integer
        .map_or(Cell::Float(r.value), |v| Cell::Int(v.into()));
    let mut t = Table::new(&[
        "x",
        "modulus",
        "residue",
        "value",
        "main_term",
        "error",
        "envelope",
        "normalized_error",
    ]);
    t.push(vec![
        Cell::Int(q.x.into()),
        Cell::Int(q.q.into()),
        Cell::Int(a.into()),
        value,
        opt_float(r.main_term),
        opt_float(r.error),
        opt_float(r.envelope),
        opt_float(r.normalized_error),
    ]);
    Ok(t)
}

fn pairsum(c: &RunConfig) -> Result<Table, CliError> {
    let (sigma, tau) = match c.residue.as_slice() {
        [] => (0, 0),
        [s, t] => (*s, *t),
        _ => return Err(CliError::Usage("pairsum takes --residue sigma,tau".into())),
    };
    let x = need(c.x, "--x")?;
    let y = c.bound.unwrap_or(x);
    let f = GClassFunction::r_tilde();
    let r = coprime_pair_sum(
        &PairQuery {
            x,
            y,
            q: c.modulus,
            sigma,
            tau,
            k: 1,
        },
        &f,
        &f,
    )?;
    let mut t = Table::new(&[
        "x",
        "y",
        "modulus",
        "sigma",
        "tau",
        "value",
        "main_term",
        "ratio",
    ]);
    t.push(vec![
        Cell::Int(x.into()),
        Cell::Int(y.into()),
        Cell::Int(c.modulus.into()),
        Cell::Int(sigma.into()),
        Cell::Int(tau.into()),
        Cell::Float(r.value),
        Cell::Float(r.main_term),
        Cell::Float(r.ratio),
    ]);
    Ok(t)
}

fn bt(c: &RunConfig) -> Result<Table, CliError> {
    let bound = need(c.bound, "--bound")?;
    let mut t = Table::new(&["quantity", "value"]);
    let mut row = |name: &str, v: u64| t.push(vec![Cell::Text(name.into()), Cell::Int(v.into())]);
    if c.twist.is_empty() {
        row("count_bt", count_bt(bound, false));
        row("count_bt_nonzero_y", count_bt(bound, true));
        return Ok(t);
    }
    let coords: [i64; 4] = c
        .twist
        .as_slice()
        .try_into()
        .map_err(|_| CliError::Usage("--twist takes four integers".into()))?;
    let twist = TwistVector::new(coords)?;
    let big_t = twist.product();
    let source_bound = bound / big_t;

    let mut images = HashSet::new();
    let (mut sources, mut injective, mut heights_ok, mut max_height) = (0u64, true, true, 0u64);
    // fermat_points lists both signs; take one representative per class.
    for z in fermat_points(source_bound)
        .into_iter()
        .filter(|z| z.coords().iter().find(|&&v| v != 0) > Some(&0))
    {
        let (y, h) = transfer_point(&twist, &z)?;
        if twist.form(&y.coords()) != 0 {
            return Err(CliError::Internal(format!(
                "transfer of {z} leaves the twist"
            )));
        }
        let key = if y.coords().iter().find(|&&v| v != 0) < Some(&0) {
            y.neg().coords()
        } else {
            y.coords()
        };
        injective &= images.insert(key);
        heights_ok &= h <= big_t * z.height();
        max_height = max_height.max(h);
        sources += 1;
    }
    row("twist_product", big_t);
    row("count_on_twist", count_on_twist(&twist, bound, true)?);
    row("half_fermat_count", count_n(source_bound).count / 2);
    row("transfer_sources", sources);
    row("transfer_injective", injective as u64);
    row("transfer_heights_within_bound", heights_ok as u64);
    row("transfer_max_height", max_height);
    Ok(t)
}

fn fit(c: &RunConfig) -> Result<Table, CliError> {
    let path = need(c.input.as_ref(), "an input CSV")?;
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| CliError::Usage(e.to_string()))?
        .clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| CliError::Usage(format!("input lacks a `{name}` column")))
    };
    let (bi, ci) = (col("bound")?, col("count")?);
    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Usage(e.to_string()))?;
        let num = |i: usize| {
            record[i]
                .trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("`{}`: {e}", &record[i])))
        };
        samples.push((num(bi)?, num(ci)?));
    }
    let fit = fit_log_power(&samples)?;
    let mut t = Table::new(&["c0", "c1", "c2", "c3", "rms_residual"]);
    let mut row: Vec<Cell> = fit.coefficients.iter().map(|&v| Cell::Float(v)).collect();
    row.push(Cell::Float(fit.rms_residual));
    t.push(row);
    Ok(t)
}
