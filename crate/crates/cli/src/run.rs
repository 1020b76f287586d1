use std::path::{Path, PathBuf};

use tricur::bounds::error_bound_report;
use tricur::cur::{cur, gcur, rsvd_cur_from_factors};
use tricur::harness::{
    gauss_markov_experiment, multiview_select, noise_recovery_experiment, CovarianceSpec,
    GaussMarkovConfig, NoiseRecoveryConfig,
};
use tricur::io::{
    read_csv_matrix, read_matrix_market, write_json, write_matrix_market, write_results,
};
use tricur::io::{DecompositionRecord, FeatureSelectionRecord};
use tricur::rsvd::rsvd;
use tricur::{DenseMatrix, Error};

use crate::args::{Cli, Command, Experiment, GaussMarkovArgs, NoiseArgs, Triplet};

const LARGE_M: usize = 4000;

/// An error tagged with the stage that produced it.
#[derive(Debug)]
pub enum Failure {
    Input(Error),
    Compute(Error),
    Output(Error),
}

impl Failure {
    pub fn error(&self) -> &Error {
        match self {
            Failure::Input(e) | Failure::Compute(e) | Failure::Output(e) => e,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(Error::Parse { .. } | Error::Io { .. } | Error::NonFinite { .. }) => 3,
            Failure::Input(_) => 2,
            Failure::Compute(e) if e.is_numerical() => 4,
            Failure::Compute(_) => 2,
            Failure::Output(_) => 1,
        }
    }
}

fn load(path: &Path) -> Result<DenseMatrix, Failure> {
    read_matrix_market(path).map_err(Failure::Input)
}

fn load_triplet(t: &Triplet) -> Result<(DenseMatrix, DenseMatrix, DenseMatrix), Failure> {
    Ok((load(&t.a)?, load(&t.b)?, load(&t.g)?))
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cur {
            a,
            k,
            selector,
            out,
        } => {
            let a = load(&a)?;
            let r = cur(&a, k, selector).map_err(Failure::Compute)?;
            let rec = DecompositionRecord::from_cur(&a, &r).map_err(Failure::Compute)?;
            save_record(&out, &rec)
        }
        Command::Gcur {
            a,
            g,
            k,
            selector,
            out,
        } => {
            let (a, g) = (load(&a)?, load(&g)?);
            let r = gcur(&a, &g, k, selector).map_err(Failure::Compute)?;
            let rec = DecompositionRecord::from_gcur(&a, &g, &r).map_err(Failure::Compute)?;
            save_record(&out, &rec)
        }
        Command::RsvdCur {
            triplet,
            k,
            selector,
            bounds,
            out,
        } => {
            let (a, b, g) = load_triplet(&triplet)?;
            let rec = (|| {
                let f = rsvd(&a, &b, &g)?;
                let r = rsvd_cur_from_factors(&a, &b, &g, &f, k, selector)?;
                let report = if bounds {
                    Some(error_bound_report(&a, &b, &g, &r, &f)?)
                } else {
                    None
                };
                DecompositionRecord::from_rsvd_cur(&a, &b, &g, &r, report)
            })()
            .map_err(Failure::Compute)?;
            save_record(&out, &rec)
        }
        Command::Rsvd { triplet, k, out } => {
            let (a, b, g) = load_triplet(&triplet)?;
            let t = rsvd(&a, &b, &g)
                .and_then(|f| f.truncate(k))
                .map_err(Failure::Compute)?;
            let column = |v: &[f64]| DenseMatrix::column_vector(v);
            let parts = [
                ("z", t.z),
                ("w", t.w),
                ("u", t.u),
                ("v", t.v),
                ("alpha", column(&t.alpha)),
                ("beta", column(&t.beta)),
                ("gamma", column(&t.gamma)),
            ];
            for (name, m) in &parts {
                let path = suffixed(&out, name);
                write_matrix_market(&path, m).map_err(Failure::Output)?;
            }
            println!("wrote rank-{k} factors to {}_*.mtx", out.display());
            Ok(())
        }
        Command::Experiment(Experiment::NoiseRecovery(args)) => noise_recovery(args),
        Command::Experiment(Experiment::GaussMarkov(args)) => gauss_markov(args),
        Command::SelectMultiview {
            view1,
            view2,
            k,
            selector,
            header,
            out,
        } => {
            let v1 = read_csv_matrix(&view1, header).map_err(Failure::Input)?;
            let v2 = read_csv_matrix(&view2, header).map_err(Failure::Input)?;
            let sel = multiview_select(&v1, &v2, k, selector).map_err(Failure::Compute)?;
            write_json(&out, &FeatureSelectionRecord::new(&sel, selector))
                .map_err(Failure::Output)?;
            println!("wrote {k} features per view to {}", out.display());
            Ok(())
        }
    }
}

fn suffixed(prefix: &Path, name: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(format!("_{name}.mtx"));
    PathBuf::from(s)
}

fn save_record(out: &Path, rec: &DecompositionRecord) -> Result<(), Failure> {
    write_json(out, rec).map_err(Failure::Output)?;
    let errors: Vec<String> = rec
        .errors
        .iter()
        .map(|(name, e)| format!("{name} {e:.3e}"))
        .collect();
    println!(
        "wrote {} (k = {}, relative errors: {})",
        out.display(),
        rec.k,
        errors.join(", ")
    );
    Ok(())
}

fn noise_recovery(args: NoiseArgs) -> Result<(), Failure> {
    if args.m > LARGE_M && !args.allow_large {
        return Err(Failure::Input(Error::InvalidConfig(format!(
            "m = {} needs several m x m dense matrices; pass --allow-large to run it anyway",
            args.m
        ))));
    }
    let cfg = NoiseRecoveryConfig {
        m: args.m,
        n: args.n,
        rank: args.rank,
        eps: args.eps,
        density: args.density,
        ks: (1..=args.kmax).collect(),
        seeds: (args.first_seed..args.first_seed + args.seeds).collect(),
        b_cov: CovarianceSpec::compound_symmetry(args.m, args.cs_nu, args.cs_xi),
        g_cov: CovarianceSpec::ar1(args.n, args.ar1_nu, args.ar1_xi),
        selector: args.selector,
        inexact: args.inexact,
    };
    cfg.validate().map_err(Failure::Input)?;
    let rows = noise_recovery_experiment(&cfg).map_err(Failure::Compute)?;
    write_results(&args.out, &rows, args.format).map_err(Failure::Output)?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}

fn gauss_markov(args: GaussMarkovArgs) -> Result<(), Failure> {
    let cfg = GaussMarkovConfig {
        m: args.m,
        n: args.n,
        l: args.l,
        d: args.d,
        gen_a: args.gen_a,
        gen_b: args.gen_b,
        gen_g: args.gen_g,
        trials: args.trials,
        ks: args.ks,
        seed: args.seed,
        mu: args.mu,
    };
    cfg.validate().map_err(Failure::Input)?;
    let rows = gauss_markov_experiment(&cfg).map_err(Failure::Compute)?;
    write_results(&args.out, &rows, args.format).map_err(Failure::Output)?;
    println!("wrote {} rows to {}", rows.len(), args.out.display());
    Ok(())
}
