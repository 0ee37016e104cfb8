use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use impurity_casimir::{
    convergence_study, energy_density_point_closed, radial_grid, BuiltinShapeF64, ConvergenceRowF64,
    CouplingConvention, CouplingF64, EnergyDensityProfileF64, GridScale, QuadratureConfigF64, RadialPointF64,
};

use crate::settings::RunFile;
use crate::{ConvergenceArgs, CouplingArgs, Failure, ProfileArgs, Scale, ShapeName, ToleranceArgs};

const COUPLING_KEYS: [(&str, CouplingConvention); 3] = [
    ("gamma", CouplingConvention::FermiPizzoccheroGamma),
    ("alpha", CouplingConvention::ZiemianAlpha),
    ("alpha-a", CouplingConvention::AlbeverioAlphaA),
];

/// The coupling from the flags if any is given, else from the file, else `γ = 1`.
/// At most one convention may be given at each level.
fn resolve_coupling(args: &CouplingArgs, file: &RunFile, required: bool) -> Result<CouplingF64, Failure> {
    let flags = [args.gamma, args.alpha, args.alpha_a];
    let given: Vec<_> = COUPLING_KEYS
        .iter()
        .zip(flags)
        .filter_map(|(&(_, convention), v)| v.map(|v| (convention, v)))
        .collect();
    let chosen = match given.as_slice() {
        [one] => Some(*one),
        [] => {
            let in_file: Vec<_> = COUPLING_KEYS.iter().filter(|(key, _)| file.contains(key)).collect();
            match in_file.as_slice() {
                [] => None,
                [(key, convention)] => file.pick::<f64>(None, key)?.map(|v| (*convention, v)),
                _ => {
                    return Err(Failure::usage(
                        "config file sets more than one of gamma, alpha, alpha-a",
                    ))
                }
            }
        }
        _ => return Err(Failure::usage("give only one of --gamma, --alpha, --alpha-a")),
    };
    match chosen {
        Some((convention, value)) => Ok(CouplingF64::new(convention, value)?),
        None if required => Err(Failure::usage("one of --gamma, --alpha, --alpha-a is required")),
        None => Ok(CouplingF64::gamma(1.0)?),
    }
}

fn resolve_tolerances(args: &ToleranceArgs, file: &RunFile) -> Result<QuadratureConfigF64, Failure> {
    let defaults = QuadratureConfigF64::default();
    let config = QuadratureConfigF64 {
        abs_tol: file.pick_or(args.abs_tol, "abs-tol", defaults.abs_tol)?,
        rel_tol: file.pick_or(args.rel_tol, "rel-tol", defaults.rel_tol)?,
        max_refinement: file.pick_or(args.max_refinement, "max-refinement", defaults.max_refinement)?,
        ..defaults
    };
    config.validate()?;
    Ok(config)
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                Failure::usage(format!("cannot create {}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn profile(args: ProfileArgs, file: &RunFile) -> Result<(), Failure> {
    let coupling = resolve_coupling(&args.coupling, file, false)?;
    let config = resolve_tolerances(&args.tolerances, file)?;
    let rmin = file.pick_or(args.rmin, "rmin", 0.1)?;
    let rmax = file.pick_or(args.rmax, "rmax", 10.0)?;
    let rcount = file.pick_or(args.rcount, "rcount", 20)?;
    let scale = match file
        .pick_or(args.rscale.map(scale_name), "rscale", "log".to_string())?
        .as_str()
    {
        "linear" => GridScale::Linear,
        "log" => GridScale::Log,
        other => return Err(Failure::usage(format!("rscale must be linear or log, not `{other}`"))),
    };
    let out = file.pick(args.out, "out")?;

    let radii = radial_grid(rmin, rmax, rcount, scale)?;
    let profile = EnergyDensityProfileF64::point(coupling, &radii, &config)?;
    let gamma = coupling.to_gamma();

    let mut w = output(out.as_deref())?;
    writeln!(w, "radius,density_integral,density_closed,abs_diff,quad_error")?;
    for s in &profile.samples {
        let closed = energy_density_point_closed(RadialPointF64::new(s.radius)?, gamma)?;
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.radius,
            s.density,
            closed,
            (s.density - closed).abs(),
            s.error_estimate
        )?;
    }
    w.flush()?;

    let failed = profile.samples.iter().filter(|s| !s.converged).count();
    if failed > 0 {
        return Err(Failure::numerical(format!(
            "{failed} of {} rows did not converge",
            radii.len()
        )));
    }
    Ok(())
}

fn scale_name(s: Scale) -> String {
    match s {
        Scale::Linear => "linear",
        Scale::Log => "log",
    }
    .to_string()
}

fn parse_lambdas(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| Failure::usage(format!("invalid lambda `{s}`"))))
        .collect()
}

fn build_shape(name: &str, param: f64) -> Result<BuiltinShapeF64, Failure> {
    Ok(match name {
        "trivial" => BuiltinShapeF64::trivial(),
        "ball" => BuiltinShapeF64::ball(param)?,
        "gaussian" => BuiltinShapeF64::gaussian(param)?,
        other => return Err(Failure::usage(format!("unknown shape `{other}`"))),
    })
}

/// Consecutive rows are acceptable if the error drops, or if both errors are
/// already below what the quadrature can resolve.
fn error_column_decreasing(rows: &[ConvergenceRowF64], config: &QuadratureConfigF64) -> bool {
    let floor = |row: &ConvergenceRowF64| {
        row.density.error_estimate + config.tolerance_for(row.point_limit) + 8.0 * f64::EPSILON * row.point_limit
    };
    rows.windows(2)
        .all(|w| w[1].abs_error < w[0].abs_error || (w[0].abs_error <= floor(&w[0]) && w[1].abs_error <= floor(&w[1])))
}

pub fn convergence(args: ConvergenceArgs, file: &RunFile) -> Result<(), Failure> {
    let coupling = resolve_coupling(&args.coupling, file, false)?;
    let config = resolve_tolerances(&args.tolerances, file)?;
    let shape_name = match args.shape {
        Some(ShapeName::Trivial) => "trivial".to_string(),
        Some(ShapeName::Ball) => "ball".to_string(),
        Some(ShapeName::Gaussian) => "gaussian".to_string(),
        None => file.pick_or(None, "shape", "ball".to_string())?,
    };
    let shape = build_shape(&shape_name, file.pick_or(args.shape_param, "shape-param", 1.0)?)?;
    let lambdas = parse_lambdas(
        &file
            .pick(args.lambdas, "lambdas")?
            .ok_or_else(|| Failure::usage("--lambdas is required"))?,
    )?;
    let radius = RadialPointF64::new(file.pick_or(args.radius, "radius", 1.0)?)?;
    let out = file.pick(args.out, "out")?;

    let rows = convergence_study(radius, coupling.to_ziemian_alpha(), &shape, &lambdas, &config)?;

    let mut w = output(out.as_deref())?;
    writeln!(w, "lambda,density_extended,point_limit,abs_error")?;
    for row in &rows {
        writeln!(
            w,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            row.lambda, row.density.value, row.point_limit, row.abs_error
        )?;
    }
    w.flush()?;

    if let Some(row) = rows.iter().find(|r| !r.density.converged) {
        return Err(Failure::numerical(format!(
            "quadrature did not converge at lambda = {}",
            row.lambda
        )));
    }
    if !error_column_decreasing(&rows, &config) {
        return Err(Failure::numerical("abs_error column is not decreasing"));
    }
    Ok(())
}

pub fn convert(args: CouplingArgs, file: &RunFile) -> Result<(), Failure> {
    let coupling = resolve_coupling(&args, file, true)?;
    println!("alpha   = {:.16e}", coupling.to_ziemian_alpha());
    println!("gamma   = {:.16e}", coupling.to_gamma());
    println!("alpha_a = {:.16e}", coupling.to_albeverio());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_lists() {
        assert_eq!(parse_lambdas("0.5, 0.1,0.01").unwrap(), vec![0.5, 0.1, 0.01]);
        assert!(parse_lambdas("0.5,x").is_err());
        assert!(parse_lambdas("").unwrap().is_empty());
    }

    #[test]
    fn coupling_precedence() {
        let file = RunFile::parse("alpha = 3").unwrap();
        let none = CouplingArgs::default();
        assert_eq!(
            resolve_coupling(&none, &file, true).unwrap(),
            CouplingF64::alpha(3.0).unwrap()
        );
        let flag = CouplingArgs {
            gamma: Some(2.0),
            ..CouplingArgs::default()
        };
        assert_eq!(
            resolve_coupling(&flag, &file, true).unwrap(),
            CouplingF64::gamma(2.0).unwrap()
        );
        assert!(resolve_coupling(&none, &RunFile::default(), true).is_err());
        assert_eq!(
            resolve_coupling(&none, &RunFile::default(), false).unwrap(),
            CouplingF64::gamma(1.0).unwrap()
        );
        let two = CouplingArgs {
            gamma: Some(2.0),
            alpha: Some(1.0),
            ..CouplingArgs::default()
        };
        assert!(resolve_coupling(&two, &file, false).is_err());
    }
}
