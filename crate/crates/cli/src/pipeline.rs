//! Subcommand implementations. Each run validates, computes and then
//! writes its files; nothing is written when a computation fails.

use kawahara_core::asymptotics::{isola, Branch, IsolaModel};
use kawahara_core::collision::find_collision;
use kawahara_core::dispersion::omega;
use kawahara_core::ffh::{linspace, HillProblem, IsolaNumerics, IsolaWindow, SpectrumSlice};
use kawahara_core::higher_order::SecondOrderTerms;
use kawahara_core::stokes::{stokes_expansion, uniform_grid};
use kawahara_core::{CollisionSite, Complex64, Error as CoreError, PhysicalParams, SecondOrderModel};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::output::{num, out_path, write_csv, write_json};
use crate::report::{
    CollisionDto, CollisionFile, CompareReport, GridDto, IsolaMeta, NumericFile, NumericsDto, QuantityReport,
    StokesDto, StokesFile,
};
use crate::tolerances::{Profile, Tolerances, TOLERANCE_TABLE_VERSION};

/// Half-width of the fallback grid when the predicted window is a point.
const FALLBACK_HALF_WIDTH: f64 = 1e-3;

pub fn run_stokes(config: &RunConfig) -> Result<StokesFile, CliError> {
    let params = config.params()?;
    let stokes = stokes_expansion(&params)?;
    let profile: Vec<(f64, f64)> = uniform_grid(config.samples)
        .into_iter()
        .map(|x| (x, stokes.eval(x, config.eps)))
        .collect();
    let file = StokesFile { config: config.clone(), coefficients: StokesDto::new(&stokes, config.eps), profile };
    match config.format {
        Format::Json => write_json(&out_path(&config.out_dir, "stokes.json"), &file)?,
        Format::Csv => {
            let c = &file.coefficients;
            let coefficient_rows = [
                ("beta", config.beta),
                ("sigma", config.sigma),
                ("eps", config.eps),
                ("c0", c.c0),
                ("c2", c.c2),
                ("u2_0", c.u2_0),
                ("u2_2", c.u2_2),
                ("u3_3", c.u3_3),
                ("speed", c.speed),
            ]
            .into_iter()
            .map(|(k, v)| vec!["coefficient".to_string(), k.to_string(), num(v)]);
            let profile_rows = file.profile.iter().map(|&(x, u)| vec!["profile".to_string(), num(x), num(u)]);
            write_csv(
                &out_path(&config.out_dir, "stokes.csv"),
                &["section", "key", "value"],
                coefficient_rows.chain(profile_rows),
            )?;
        }
    }
    Ok(file)
}

fn site_dto(site: &CollisionSite, params: &PhysicalParams) -> CollisionDto {
    CollisionDto::new(site, (omega(site.k_m, params) - omega(site.k_n, params)).abs())
}

pub fn run_collide(config: &RunConfig) -> Result<CollisionFile, CliError> {
    let params = config.params()?;
    let site = find_collision(config.delta_n, &params)?;
    let file = CollisionFile { config: config.clone(), site: site_dto(&site, &params) };
    write_json(&out_path(&config.out_dir, "collision.json"), &file)?;
    Ok(file)
}

/// Asymptotic prediction for a run.
#[derive(Debug, Clone)]
pub struct Prediction {
    pub params: PhysicalParams,
    pub site: CollisionSite,
    pub leading: IsolaModel,
    pub second: Option<SecondOrderModel>,
    pub meta: IsolaMeta,
}

impl Prediction {
    pub fn new(config: &RunConfig) -> Result<Self, CliError> {
        let params = config.params()?;
        let site = find_collision(config.delta_n, &params)?;
        let leading = isola(&site, &params, config.eps)?;
        let dto = site_dto(&site, &params);
        let second = if config.delta_n == 1 && config.order == 2 {
            Some(match config.mu2_override {
                Some(mu2) => SecondOrderModel::with_mu2_override(&site, &params, config.eps, mu2)?,
                None => SecondOrderModel::new(&site, &params, config.eps)?,
            })
        } else {
            None
        };
        let meta = match &second {
            Some(s) => IsolaMeta::second_order(config, dto, &leading, s),
            None => IsolaMeta::leading(config, dto, &leading),
        };
        Ok(Self { params, site, leading, second, meta })
    }

    pub fn mu_interval(&self) -> (f64, f64) {
        self.meta.mu_interval
    }

    pub fn mu_star(&self) -> f64 {
        self.meta.mu_star
    }

    pub fn lambda_star(&self) -> Complex64 {
        Complex64::new(self.meta.lambda_star.re, self.meta.lambda_star.im)
    }

    /// `(μ, λ, branch)` samples of the model curve.
    pub fn curve(&self, samples: usize) -> Vec<(f64, Complex64, Branch)> {
        match &self.second {
            Some(s) => s.curve(samples),
            None => self.leading.curve(samples),
        }
    }

    /// Eigenvalue search window for the FFH isola.
    pub fn window(&self, growth_floor: f64) -> IsolaWindow {
        let semi = self.leading.semi_major_a.max(self.leading.semi_minor_b);
        IsolaWindow::around(Complex64::new(0.0, self.leading.center()), semi, self.leading.eps)
            .with_growth_floor(growth_floor)
    }
}

pub fn run_isola(config: &RunConfig) -> Result<IsolaMeta, CliError> {
    let prediction = Prediction::new(config)?;
    let curve = prediction.curve(config.samples);
    match config.format {
        Format::Csv => write_csv(
            &out_path(&config.out_dir, "isola_asym.csv"),
            &["mu", "lambda_re", "lambda_im", "branch"],
            curve.iter().map(|(mu, l, b)| vec![num(*mu), num(l.re), num(l.im), b.label().to_string()]),
        )?,
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                mu: f64,
                lambda_re: f64,
                lambda_im: f64,
                branch: &'static str,
            }
            let rows: Vec<Row> = curve
                .iter()
                .map(|(mu, l, b)| Row { mu: *mu, lambda_re: l.re, lambda_im: l.im, branch: b.label() })
                .collect();
            write_json(&out_path(&config.out_dir, "isola_asym.json"), &rows)?;
        }
    }
    write_json(&out_path(&config.out_dir, "isola_meta.json"), &prediction.meta)?;
    Ok(prediction.meta)
}

/// Spectra over a μ-grid and the isola measured from them.
#[derive(Debug, Clone)]
pub struct Measurement {
    pub grid: GridDto,
    pub slices: Vec<SpectrumSlice>,
    pub numerics: Option<IsolaNumerics>,
}

/// Grid bounds: explicit range, or the predicted window widened by `margin`.
pub fn grid_bounds(config: &RunConfig, prediction: &Prediction) -> (f64, f64) {
    if let Some(range) = config.mu_range {
        return range;
    }
    let (lo, hi) = prediction.mu_interval();
    let width = hi - lo;
    let (lo, hi) = if width > 0.0 {
        (lo - config.margin * width, hi + config.margin * width)
    } else {
        (prediction.site.mu0 - FALLBACK_HALF_WIDTH, prediction.site.mu0 + FALLBACK_HALF_WIDTH)
    };
    (lo.max(-0.5), hi.min(0.5))
}

/// Per-slice eigenvalues computed in parallel, returned in grid order.
pub fn parallel_sweep(problem: &HillProblem, grid: &[f64], config: &RunConfig) -> Result<Vec<SpectrumSlice>, CliError> {
    let results: Vec<Result<SpectrumSlice, CoreError>> = grid.par_iter().map(|&mu| problem.spectrum(mu)).collect();
    let mut slices = Vec::with_capacity(grid.len());
    for (index, result) in results.into_iter().enumerate() {
        match result {
            Ok(slice) => slices.push(slice),
            Err(CoreError::EigenFailure { dim, row }) => {
                let mu = grid[index];
                let dump = dump_matrix(problem, mu, config)?;
                return Err(CliError::Numerical {
                    message: CoreError::SliceFailure { index, mu, dim, row }.to_string(),
                    dump: Some(dump),
                });
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(slices)
}

fn dump_matrix(problem: &HillProblem, mu: f64, config: &RunConfig) -> Result<std::path::PathBuf, CliError> {
    let a = problem.matrix(mu);
    let path = out_path(&config.out_dir, "failed_matrix.csv");
    let rows = (0..a.rows()).flat_map(|r| {
        let a = &a;
        (0..a.cols()).map(move |c| vec![r.to_string(), c.to_string(), num(a[(r, c)].re), num(a[(r, c)].im)])
    });
    write_csv(&path, &["row", "col", "re", "im"], rows)?;
    Ok(path)
}

pub fn measure(config: &RunConfig, prediction: &Prediction) -> Result<Measurement, CliError> {
    let problem = HillProblem::new(prediction.params, config.eps, config.trunc_n)?;
    let (lo, hi) = grid_bounds(config, prediction);
    let grid = linspace(lo, hi, config.mu_points);
    log::info!("sweeping {} Floquet exponents on [{lo}, {hi}] with N = {}", grid.len(), config.trunc_n);
    let slices = parallel_sweep(&problem, &grid, config)?;
    let window = prediction.window(config.growth_floor);
    let numerics = problem.extract_isola(&slices, &window)?;
    if numerics.as_ref().is_some_and(|n| n.touches_grid_edge) {
        log::warn!("unstable band reaches the edge of the grid; widen --margin");
    }
    let grid = GridDto {
        mu_lo: lo,
        mu_hi: hi,
        points: config.mu_points,
        window_center: window.center.into(),
        window_radius: window.radius,
        growth_floor: window.growth_floor,
    };
    Ok(Measurement { grid, slices, numerics })
}

pub fn run_ffh(config: &RunConfig) -> Result<NumericFile, CliError> {
    let prediction = Prediction::new(config)?;
    let m = measure(config, &prediction)?;
    let rows = m
        .slices
        .iter()
        .flat_map(|s| s.eigenvalues.iter().map(move |l| (s.mu, *l)));
    match config.format {
        Format::Csv => write_csv(
            &out_path(&config.out_dir, "spectrum.csv"),
            &["mu", "lambda_re", "lambda_im"],
            rows.map(|(mu, l)| vec![num(mu), num(l.re), num(l.im)]),
        )?,
        Format::Json => {
            let rows: Vec<[f64; 3]> = rows.map(|(mu, l)| [mu, l.re, l.im]).collect();
            write_json(&out_path(&config.out_dir, "spectrum.json"), &rows)?;
        }
    }
    let file = NumericFile {
        config: config.clone(),
        grid: m.grid,
        stable: m.numerics.is_none(),
        isola: m.numerics.as_ref().map(NumericsDto::from),
    };
    write_json(&out_path(&config.out_dir, "isola_numeric.json"), &file)?;
    Ok(file)
}

/// Normalization scales `(interval, Im)` for a comparison.
fn scales(prediction: &Prediction) -> Result<(f64, f64, &'static str, &'static str), CliError> {
    let model = &prediction.leading;
    let eps2 = model.eps * model.eps;
    if model.delta_n == 1 {
        let terms = SecondOrderTerms::new(&prediction.site, &prediction.params)?;
        let mu2 = terms.regular_mu2() + terms.mu_star_correction();
        let (a, _) = terms.a_b(0.0, mu2);
        Ok((model.scale() * model.nu_half_width, eps2 * (0.5 * a).abs(), "eps*M1", "eps^2*|lambda2_i|"))
    } else {
        Ok((2.0 * model.scale() * model.nu_half_width, eps2 * model.center_drift.abs(), "interval width", "eps^2*|drift|"))
    }
}

pub fn compare(config: &RunConfig, profile: Profile, tolerances: Tolerances) -> Result<CompareReport, CliError> {
    let prediction = Prediction::new(config)?;
    let measurement = measure(config, &prediction)?;
    let (interval_scale, im_scale, interval_norm, im_norm) = scales(&prediction)?;
    let (lo, hi) = prediction.mu_interval();
    let star = prediction.lambda_star();
    let numerics = measurement.numerics.as_ref();
    let degenerate = numerics.is_none() && star.re == 0.0;

    let quantity = |name: &str, predicted: f64, measured: Option<f64>, scale: f64, normalization: &str, tolerance: f64| {
        let (error, pass) = if degenerate {
            (Some(0.0), true)
        } else {
            match measured {
                Some(m) => {
                    let e = (m - predicted).abs() / scale;
                    (Some(e), e <= tolerance)
                }
                None => (None, false),
            }
        };
        QuantityReport {
            name: name.to_string(),
            predicted,
            measured,
            error,
            scale,
            normalization: normalization.to_string(),
            tolerance,
            pass,
        }
    };

    let quantities = vec![
        quantity("mu_lo", lo, numerics.map(|n| n.mu_lo), interval_scale, interval_norm, tolerances.interval),
        quantity("mu_hi", hi, numerics.map(|n| n.mu_hi), interval_scale, interval_norm, tolerances.interval),
        quantity("mu_star", prediction.mu_star(), numerics.map(|n| n.mu_star), interval_scale, interval_norm, tolerances.mu_star),
        quantity("lambda_star_re", star.re, numerics.map(|n| n.lambda_star.re), star.re.abs(), "relative", tolerances.re),
        quantity("lambda_star_im", star.im, numerics.map(|n| n.lambda_star.im), im_scale, im_norm, tolerances.im),
    ];
    let failing: Vec<String> = quantities.iter().filter(|q| !q.pass).map(|q| q.name.clone()).collect();
    let report = CompareReport {
        config: config.clone(),
        profile: profile.name().to_string(),
        tolerance_table_version: TOLERANCE_TABLE_VERSION,
        tolerances,
        predicted: prediction.meta.clone(),
        measured: numerics.map(NumericsDto::from),
        quantities,
        pass: failing.is_empty(),
        failing,
    };
    write_json(&out_path(&config.out_dir, "report.json"), &report)?;
    Ok(report)
}
