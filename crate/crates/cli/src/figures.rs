//! The reference figures as CSV files.
//!
//! fig1   a/R versus beta R over (0, 10], 2000 points, tan poles flagged
//! fig2   tan(delta)/k versus (kR)^2 for beta in {4.4, 4.45, 4.4934, 4.515},
//!        exact against er22/er23 with the effective range set to R
//! fig3   k cot(delta) versus (kR)^2 for a/R in {-3.14, 0, 2.54}, exact
//!        against er1/er24 with r0 = R
//! fig4a-d  both function families at a/R = -1 and +1
//!
//! After writing the file, each improved/basic curve pair is checked for
//! max_abs_dev(improved) <= max_abs_dev(basic); a violation exits with
//! status 3 naming the curve.  The fig3 curve at a/R = 0 is emitted for
//! inspection but not checked: its 1/a intercept is genuinely divergent
//! there and no finite intercept is fabricated.

use crate::table::{fmt, fmt_flag, Csv};
use crate::{grid_points, Failure};
use anyhow::anyhow;
use erange_core::{
    eval_expansion, scattering_length_scan, solve_beta_for_target_a, ErParams, ExpansionKind,
    SquareWell,
};
use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

pub fn run_figure(
    id: &str,
    out: &Path,
    kk_min: Option<f64>,
    kk_max: Option<f64>,
    n: Option<usize>,
) -> Result<(), Failure> {
    let window = (kk_min.unwrap_or(0.005), kk_max.unwrap_or(0.5));
    let n_curve = n.unwrap_or(100);
    match id {
        "fig1" => fig1(out, n.unwrap_or(2000)),
        "fig2" => fig2(out, window, n_curve),
        "fig3" => fig3(out, window, n_curve),
        "fig4a" => fig4_tan(out, window, n_curve, -1.0, "fig4a"),
        "fig4b" => fig4_tan(out, window, n_curve, 1.0, "fig4b"),
        "fig4c" => fig4_cot(out, window, n_curve, -1.0, "fig4c"),
        "fig4d" => fig4_cot(out, window, n_curve, 1.0, "fig4d"),
        other => Err(Failure::Numeric(anyhow!(
            "unknown figure id `{other}` (fig1, fig2, fig3, fig4a, fig4b, fig4c, fig4d)"
        ))),
    }
}

fn fig1(out: &Path, n: usize) -> Result<(), Failure> {
    let scan = scattering_length_scan(1.0, 10.0, n)?;
    let mut csv = Csv::new(&[], &["betaR", "a_over_R", "pole_flag"]);
    let mut poles = 0usize;
    for p in &scan {
        if p.pole {
            poles += 1;
        }
        csv.row(&[
            fmt(p.beta_r),
            p.a_over_r.map(fmt).unwrap_or_default(),
            fmt_flag(p.pole),
        ]);
    }
    csv.write(Some(out))?;
    println!("fig1: {} points on betaR in (0, 10], {poles} pole-flagged -> {}", scan.len(), out.display());
    Ok(())
}

/// A tan(delta)/k curve with the basic and improved small-a expansions,
/// both evaluated at (a, r0 = R).
struct TanCurve {
    rows: Vec<(f64, f64, f64, f64)>,
    dev_basic: f64,
    dev_improved: f64,
}

fn tan_curve(well: &SquareWell, kks: &[f64]) -> Result<TanCurve, Failure> {
    let a = well.scattering_length()?;
    let params = ErParams { a, r0: well.range() };
    let mut rows = Vec::with_capacity(kks.len());
    let (mut dev_basic, mut dev_improved) = (0.0f64, 0.0f64);
    for &kk in kks {
        let k = kk.sqrt();
        let exact = well.tan_delta_over_k(k)?;
        let basic = eval_expansion(ExpansionKind::ReciprocalSmallA, &params, k)?;
        let improved = eval_expansion(ExpansionKind::ImprovedSmallA, &params, k)?;
        dev_basic = dev_basic.max((exact - basic).abs());
        dev_improved = dev_improved.max((exact - improved).abs());
        rows.push((kk, exact, basic, improved));
    }
    Ok(TanCurve { rows, dev_basic, dev_improved })
}

/// A k cot(delta) curve with the basic and improved large-a expansions;
/// points where tan(delta)/k crosses zero are pole-flagged and excluded
/// from the deviation statistics.
struct CotCurve {
    rows: Vec<(f64, Option<f64>, f64, f64)>,
    dev_basic: f64,
    dev_improved: f64,
}

fn cot_curve(well: &SquareWell, kks: &[f64]) -> Result<CotCurve, Failure> {
    let a = well.scattering_length()?;
    let params = ErParams { a, r0: well.range() };
    let mut rows = Vec::with_capacity(kks.len());
    let (mut dev_basic, mut dev_improved) = (0.0f64, 0.0f64);
    for &kk in kks {
        let k = kk.sqrt();
        let t = well.tan_delta_over_k(k)?;
        let exact = if t.abs() < 1e-9 * well.range() { None } else { Some(1.0 / t) };
        let basic = eval_expansion(ExpansionKind::TextbookLargeA, &params, k)?;
        let improved = eval_expansion(ExpansionKind::ImprovedLargeA, &params, k)?;
        if let Some(exact) = exact {
            dev_basic = dev_basic.max((exact - basic).abs());
            dev_improved = dev_improved.max((exact - improved).abs());
        }
        rows.push((kk, exact, basic, improved));
    }
    Ok(CotCurve { rows, dev_basic, dev_improved })
}

fn check_ordering(curve: &str, basic: &str, improved: &str, dev_basic: f64, dev_improved: f64) -> Result<(), Failure> {
    if dev_improved <= dev_basic + 1e-12 {
        Ok(())
    } else {
        Err(Failure::Ordering(format!(
            "{curve}: max_abs_dev {improved}={dev_improved:.6e} exceeds {basic}={dev_basic:.6e}"
        )))
    }
}

fn fig2(out: &Path, window: (f64, f64), n: usize) -> Result<(), Failure> {
    let kks = grid_points(window.0, window.1, n)?;
    let betas = [4.4, 4.45, 4.4934, 4.515];
    let a_4515 = SquareWell::new(1.0, 4.515)?.scattering_length()?;
    let comments = vec![
        "exact tan(delta)/k for square wells against er22/er23 with the effective range set to R".into(),
        format!(
            "literature quotes a/R = -0.21 at beta*R = 4.515; the closed-form scattering length gives {}",
            fmt(a_4515)
        ),
    ];
    let mut csv = Csv::new(&comments, &["beta", "kR_sq", "exact", "er22", "er23"]);
    let mut curves = Vec::new();
    for beta in betas {
        let well = SquareWell::new(1.0, beta)?;
        let curve = tan_curve(&well, &kks)?;
        for &(kk, exact, basic, improved) in &curve.rows {
            csv.row(&[fmt(beta), fmt(kk), fmt(exact), fmt(basic), fmt(improved)]);
        }
        curves.push((beta, curve));
    }
    csv.write(Some(out))?;
    for (beta, curve) in &curves {
        println!(
            "fig2 beta={beta}: max_abs_dev er22={:.3e} er23={:.3e}",
            curve.dev_basic, curve.dev_improved
        );
    }
    println!("fig2 -> {}", out.display());
    for (beta, curve) in &curves {
        check_ordering(&format!("fig2 beta={beta}"), "er22", "er23", curve.dev_basic, curve.dev_improved)?;
    }
    Ok(())
}

fn fig3(out: &Path, window: (f64, f64), n: usize) -> Result<(), Failure> {
    let kks = grid_points(window.0, window.1, n)?;
    // target a/R, beta*R bracket for the inverse solve, ordering checked.
    // a/R = 0 uses the depth at the first nontrivial zero of a; its 1/a
    // intercept diverges, so that curve is reported but not order-checked.
    type CurveSpec = (f64, Option<(f64, f64)>, bool);
    let curves_spec: [CurveSpec; 3] = [
        (-3.14, Some((1.2, FRAC_PI_2 - 0.01)), true),
        (0.0, None, false),
        (2.54, Some((FRAC_PI_2 + 0.01, PI)), true),
    ];
    let comments =
        vec!["exact k cot(delta) for square wells against er1/er24 with r0 = R".into()];
    let mut csv = Csv::new(&comments, &["a_over_R", "beta", "kR_sq", "exact_kcot", "er1", "er24", "pole_flag"]);
    let mut summaries = Vec::new();
    for (target, bracket, checked) in curves_spec {
        let beta = match bracket {
            Some(b) => solve_beta_for_target_a(1.0, target, b)?,
            None => 4.4934,
        };
        let well = SquareWell::new(1.0, beta)?;
        let curve = cot_curve(&well, &kks)?;
        for &(kk, exact, basic, improved) in &curve.rows {
            csv.row(&[
                fmt(target),
                fmt(beta),
                fmt(kk),
                exact.map(fmt).unwrap_or_default(),
                fmt(basic),
                fmt(improved),
                fmt_flag(exact.is_none()),
            ]);
        }
        summaries.push((target, curve, checked));
    }
    csv.write(Some(out))?;
    for (target, curve, checked) in &summaries {
        println!(
            "fig3 a/R={target}: max_abs_dev er1={:.3e} er24={:.3e}{}",
            curve.dev_basic,
            curve.dev_improved,
            if *checked { "" } else { " (ordering not checked: 1/a intercept diverges at a = 0)" }
        );
    }
    println!("fig3 -> {}", out.display());
    for (target, curve, checked) in &summaries {
        if *checked {
            check_ordering(&format!("fig3 a/R={target}"), "er1", "er24", curve.dev_basic, curve.dev_improved)?;
        }
    }
    Ok(())
}

fn beta_for_unit_a(target: f64) -> Result<f64, Failure> {
    if target == 1.0 {
        // tan(beta R) = 0 at beta R = pi gives a = R exactly
        Ok(PI)
    } else {
        Ok(solve_beta_for_target_a(1.0, target, (1.0, FRAC_PI_2 - 0.01))?)
    }
}

fn fig4_tan(out: &Path, window: (f64, f64), n: usize, target: f64, id: &str) -> Result<(), Failure> {
    let kks = grid_points(window.0, window.1, n)?;
    let beta = beta_for_unit_a(target)?;
    let well = SquareWell::new(1.0, beta)?;
    let curve = tan_curve(&well, &kks)?;
    let comments = vec![format!("a_over_R = {target}, beta = {}", fmt(beta))];
    let mut csv = Csv::new(&comments, &["kR_sq", "exact", "er22", "er23"]);
    for &(kk, exact, basic, improved) in &curve.rows {
        csv.row(&[fmt(kk), fmt(exact), fmt(basic), fmt(improved)]);
    }
    csv.write(Some(out))?;
    println!(
        "{id} a/R={target}: max_abs_dev er22={:.3e} er23={:.3e} -> {}",
        curve.dev_basic,
        curve.dev_improved,
        out.display()
    );
    check_ordering(&format!("{id} a/R={target}"), "er22", "er23", curve.dev_basic, curve.dev_improved)
}

fn fig4_cot(out: &Path, window: (f64, f64), n: usize, target: f64, id: &str) -> Result<(), Failure> {
    let kks = grid_points(window.0, window.1, n)?;
    let beta = beta_for_unit_a(target)?;
    let well = SquareWell::new(1.0, beta)?;
    let curve = cot_curve(&well, &kks)?;
    let comments = vec![format!("a_over_R = {target}, beta = {}", fmt(beta))];
    let mut csv = Csv::new(&comments, &["kR_sq", "exact_kcot", "er1", "er24", "pole_flag"]);
    for &(kk, exact, basic, improved) in &curve.rows {
        csv.row(&[
            fmt(kk),
            exact.map(fmt).unwrap_or_default(),
            fmt(basic),
            fmt(improved),
            fmt_flag(exact.is_none()),
        ]);
    }
    csv.write(Some(out))?;
    println!(
        "{id} a/R={target}: max_abs_dev er1={:.3e} er24={:.3e} -> {}",
        curve.dev_basic,
        curve.dev_improved,
        out.display()
    );
    check_ordering(&format!("{id} a/R={target}"), "er1", "er24", curve.dev_basic, curve.dev_improved)
}
