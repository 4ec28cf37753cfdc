use std::fmt;
use std::fs;

use altlasso::{
    find_alternates, fit_lasso, load_corpus, load_csv, load_libsvm, read_json_file,
    to_json_string, write_json_file, AlternatesError, DataError, Dataset, FeatureRef, Loss,
    RegParam, ReportError, ReportFile, SolutionFile, SolverError, SolverOptions, TargetColumn,
};
use altlasso::{emit_dot, emit_table};

use crate::args::{AlternatesArgs, EmitFormat, FitArgs, InputArgs, InputFormat, ReportArgs};

/// Failure classified by exit code: 1 usage, 2 data, 3 non-convergence.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    NonConvergence(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::NonConvergence(m) => f.write_str(m),
        }
    }
}

impl From<DataError> for CliError {
    fn from(e: DataError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ReportError> for CliError {
    fn from(e: ReportError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::IncompatibleLoss { .. } => CliError::Data(e.to_string()),
            SolverError::NegativeRho(_) | SolverError::InvalidOptions(_) => {
                CliError::Usage(e.to_string())
            }
            SolverError::UnivariateNonConvergence { .. } => CliError::NonConvergence(e.to_string()),
        }
    }
}

impl From<AlternatesError> for CliError {
    fn from(e: AlternatesError) -> Self {
        match e {
            AlternatesError::NotConverged => CliError::NonConvergence(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

fn load_dataset(args: &InputArgs) -> Result<Dataset, CliError> {
    if args.format != InputFormat::Csv {
        if args.target_column.is_some() {
            return Err(CliError::Usage(
                "--target-column applies only to --format csv".into(),
            ));
        }
        if args.no_header {
            return Err(CliError::Usage(
                "--no-header applies only to --format csv".into(),
            ));
        }
    }
    if args.format != InputFormat::Text && (args.stop_words.is_some() || args.min_df.is_some()) {
        return Err(CliError::Usage(
            "--stop-words and --min-df apply only to --format text".into(),
        ));
    }
    let dataset = match args.format {
        InputFormat::Libsvm => load_libsvm(&args.input)?,
        InputFormat::Csv => {
            let target = args.target_column.as_deref().ok_or_else(|| {
                CliError::Usage("--format csv requires --target-column".into())
            })?;
            load_csv(&args.input, &TargetColumn::parse(target), !args.no_header)?
        }
        InputFormat::Text => {
            let stop_words = match &args.stop_words {
                Some(path) => Some(read_stop_words(path)?),
                None => None,
            };
            load_corpus(&args.input, stop_words.as_deref(), args.min_df.unwrap_or(1))?
        }
    };
    Ok(dataset)
}

fn read_stop_words(path: &std::path::Path) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Data(format!("cannot read stop words from {}: {e}", path.display()))
    })?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|w| !w.is_empty())
        .map(str::to_string)
        .collect())
}

fn write_output(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

pub fn fit(args: &FitArgs) -> Result<(), CliError> {
    if !args.rho.is_finite() || args.rho < 0.0 {
        return Err(CliError::Usage(format!(
            "--rho must be a nonnegative finite number, got {}",
            args.rho
        )));
    }
    let dataset = load_dataset(&args.input)?;
    let loss: Loss = args.loss.into();
    let reg = if args.rho_per_sample {
        RegParam::per_sample(args.rho)
    } else {
        RegParam::fixed(args.rho)
    };
    let opts = SolverOptions {
        kkt_tolerance: args.tol,
        max_sweeps: args.max_sweeps,
        ..SolverOptions::default()
    };
    let solution = fit_lasso(&dataset, loss, reg, &opts)?;
    let file = SolutionFile::from_solution(&solution, loss, reg.effective(dataset.n()));
    write_json_file(&args.output, &file)?;
    println!("support size: {}", solution.support.len());
    println!("objective: {}", solution.objective);
    println!("converged: {}", solution.converged);
    println!("sweeps: {}", solution.sweeps_used);
    if !solution.converged {
        return Err(CliError::NonConvergence(format!(
            "stationarity residual still above {} after {} sweeps; partial solution written to {}",
            args.tol,
            solution.sweeps_used,
            args.output.display()
        )));
    }
    Ok(())
}

pub fn alternates(args: &AlternatesArgs) -> Result<(), CliError> {
    if let Some(threads) = args.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot configure {threads} threads: {e}")))?;
    }
    if args.emit == EmitFormat::Tsv && args.origin.is_none() {
        return Err(CliError::Usage("--emit tsv requires --origin".into()));
    }
    let dataset = load_dataset(&args.input)?;
    let stored: SolutionFile = read_json_file(&args.solution)?;
    let loss = stored.loss;
    let reg = RegParam::fixed(stored.rho);
    let solution = stored.to_solution(&dataset)?;
    let opts = SolverOptions {
        max_prox_iters: args.max_prox_iters,
        ..SolverOptions::default()
    };
    let report = find_alternates(&dataset, loss, &solution, reg, &opts)?;
    let ratio = if report.naive_solve_count == 0 {
        0.0
    } else {
        100.0 * report.actual_solve_count as f64 / report.naive_solve_count as f64
    };
    println!(
        "solves: {} / {} ({ratio:.3}%)",
        report.actual_solve_count, report.naive_solve_count
    );
    if !report.failures.is_empty() {
        eprintln!(
            "warning: {} univariate solves hit the iteration cap; raise --max-prox-iters",
            report.failures.len()
        );
    }
    let names = dataset.matrix().feature_names();
    let file = ReportFile::from_report(&report, names);
    let text = render_report(&file, args.emit, args.origin.as_deref(), args.top_k)?;
    write_output(&args.output, &text)
}

pub fn report(args: &ReportArgs) -> Result<(), CliError> {
    if args.emit == EmitFormat::Tsv && args.origin.is_none() {
        return Err(CliError::Usage("--emit tsv requires --origin".into()));
    }
    let file: ReportFile = read_json_file(&args.report)?;
    let text = render_report(&file, args.emit, args.origin.as_deref(), args.top_k)?;
    match &args.output {
        Some(path) => write_output(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Matches --origin against the report's reference style: names when the
/// pairs carry names, otherwise a numeric index.
fn origin_ref(origin: &str, file: &ReportFile) -> FeatureRef {
    let named = file
        .pairs
        .first()
        .is_some_and(|p| matches!(p.original, FeatureRef::Name(_)));
    if named {
        FeatureRef::Name(origin.to_string())
    } else if let Ok(index) = origin.parse::<usize>() {
        FeatureRef::Index(index)
    } else {
        FeatureRef::Name(origin.to_string())
    }
}

fn render_report(
    file: &ReportFile,
    emit: EmitFormat,
    origin: Option<&str>,
    top_k: usize,
) -> Result<String, CliError> {
    match emit {
        EmitFormat::Json => Ok(to_json_string(file)?),
        EmitFormat::Dot => Ok(emit_dot(file)),
        EmitFormat::Tsv => {
            let origin = origin.expect("checked before rendering");
            let oref = origin_ref(origin, file);
            if !file.pairs.iter().any(|p| p.original == oref) {
                eprintln!("warning: origin {origin} has no pairs in this report");
            }
            Ok(emit_table(file, &oref, top_k))
        }
    }
}
