use clap::{Parser, Subcommand};
use ee_mimo::config::{load_config, ExperimentConfig};
use ee_mimo::montecarlo::{estimate_ee, CsiMode, RateTarget};
use ee_mimo::optim::{self, alternating_optimize, exhaustive_search, optimal_rho};
use ee_mimo::power::{complexity_flops, CircuitCoefficients, Scheme};
use ee_mimo::rates::{evaluate_ee, DesignPoint, Regime};
use ee_mimo::scenario::MulticellScenario;
use ee_mimo::{Error, PropagationScenario, Result};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Energy-efficiency-optimal multi-user MIMO design tool.
#[derive(Parser)]
#[command(name = "ee-mimo", version, about)]
struct Cli {
    /// Configuration file (line-oriented key = value). Defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV artifacts.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// RNG seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo trial count override.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Processing scheme override: zf, mrt, mmse.
    #[arg(long, global = true)]
    scheme: Option<String>,
    /// CSI regime override: perfect, imperfect, multicell.
    #[arg(long, global = true)]
    regime: Option<String>,
    /// Pilot reuse factor override for multicell runs: 1, 2 or 4.
    #[arg(long, global = true)]
    reuse: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the alternating optimization algorithm and dump its trajectory.
    Optimize,
    /// Exhaustive EE sweep over the (M, K) grid; one CSV row per cell.
    Sweep,
    /// Per-M curves: best K, EE, PA power (total and per antenna), area throughput.
    Curves,
    /// Monte Carlo EE estimate at the analytically optimal operating point.
    Montecarlo,
    /// Multi-cell interference aggregates and reuse-factor comparison.
    Multicell,
    /// Run the built-in oracle checks; exit 1 if any fails.
    Check,
}

fn build_thread_pool() {
    if let Ok(v) = std::env::var("EE_MIMO_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn write_csv(dir: &Path, name: &str, header: &str, rows: &[String]) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path)?;
    writeln!(f, "{header}")?;
    for row in rows {
        writeln!(f, "{row}")?;
    }
    Ok(path)
}

fn load(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => load_config(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    if let Some(s) = &cli.scheme {
        cfg.scheme = s.parse()?;
    }
    if let Some(r) = &cli.regime {
        cfg.regime_name = r.clone();
    }
    if let Some(r) = cli.reuse {
        cfg.reuse_factor = r;
        if cli.regime.is_none() && cfg.regime_name != "multicell" {
            cfg.regime_name = "multicell".into();
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn multicell_for(cfg: &ExperimentConfig, sc: &PropagationScenario) -> Result<Option<MulticellScenario>> {
    Ok(match cfg.regime()? {
        Regime::Multicell { reuse_factor } => Some(MulticellScenario::new(sc, reuse_factor)?),
        _ => None,
    })
}

fn cmd_optimize(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let sc = cfg.scenario.build(Regime::PerfectCsi)?;
    let start = DesignPoint::new(3, 1, 1.0)?;
    let run = alternating_optimize(&cfg.profile, &sc, start, 50)?;
    let rows: Vec<String> = run
        .trajectory
        .iter()
        .map(|s| {
            format!(
                "{},{},{},{},{}",
                s.iteration, s.point.m, s.point.k, s.point.rho, s.ee
            )
        })
        .collect();
    let path = write_csv(out, "trajectory.csv", "iteration,M,K,rho,ee_bit_per_joule", &rows)?;
    println!(
        "optimum M = {}, K = {}, rho = {:.6} ({} iterations, converged = {}); trajectory -> {}",
        run.point.m,
        run.point.k,
        run.point.rho,
        run.iterations,
        run.converged,
        path.display()
    );
    Ok(())
}

fn cmd_sweep(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let regime = cfg.regime()?;
    let sc = cfg.scenario.build(regime)?;
    let mc = multicell_for(cfg, &sc)?;
    let (best, surface) = exhaustive_search(
        &cfg.profile,
        &sc,
        regime,
        cfg.scheme,
        cfg.m_min..=cfg.m_max,
        cfg.k_min..=cfg.k_cap(),
        mc.as_ref(),
    )?;
    let rows: Vec<String> = surface
        .iter()
        .map(|c| {
            format!(
                "{},{},{},{},{},{},{}",
                c.m, c.k, c.rho, c.gross_rate, c.ee, c.pa_power, c.circuit_power
            )
        })
        .collect();
    let path = write_csv(
        out,
        "sweep.csv",
        "M,K,rho_star,gross_rate_bps,ee_bit_per_joule,p_tx_w,p_cp_w",
        &rows,
    )?;
    println!(
        "argmax M = {}, K = {}, rho = {:.6}; surface ({} cells) -> {}",
        best.m,
        best.k,
        best.rho,
        rows.len(),
        path.display()
    );
    Ok(())
}

fn cmd_curves(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let regime = cfg.regime()?;
    let sc = cfg.scenario.build(regime)?;
    let mc = multicell_for(cfg, &sc)?;
    let mut rows = Vec::new();
    for m in cfg.m_min..=cfg.m_max {
        let mut best: Option<ee_mimo::EeResult> = None;
        for k in cfg.k_min..=cfg.k_cap().min(m.saturating_sub(1)) {
            let rho = match regime {
                Regime::PerfectCsi => optimal_rho(&cfg.profile, &sc, m, k)?,
                _ => {
                    let eval = |r: f64| {
                        DesignPoint::new(m, k, r)
                            .and_then(|pt| {
                                evaluate_ee(&cfg.profile, &sc, cfg.scheme, regime, mc.as_ref(), pt)
                            })
                            .map(|res| res.ee)
                            .unwrap_or(0.0)
                    };
                    optim::golden_section_max(
                        eval,
                        optim::RHO_BRACKET.0,
                        optim::RHO_BRACKET.1,
                        optim::RHO_REL_TOL,
                    )
                    .0
                }
            };
            let Ok(pt) = DesignPoint::new(m, k, rho) else { continue };
            let Ok(res) = evaluate_ee(&cfg.profile, &sc, cfg.scheme, regime, mc.as_ref(), pt)
            else {
                continue;
            };
            if best.as_ref().map_or(true, |b| res.ee > b.ee) {
                best = Some(res);
            }
        }
        if let Some(b) = best {
            // Radiated downlink power split evenly over the antennas.
            let dl_per_antenna = cfg.profile.noise_power_w * cfg.profile.zeta_dl * b.point.rho
                * sc.s_x()
                * b.point.k as f64
                / m as f64;
            let area_gbit_km2 = b.area_throughput * 1e6 / 1e9;
            rows.push(format!(
                "{},{},{},{},{},{},{}",
                m, b.point.k, b.point.rho, b.ee, b.pa_power, dl_per_antenna, area_gbit_km2
            ));
        }
    }
    let path = write_csv(
        out,
        "curves.csv",
        "M,K_star,rho_star,ee_bit_per_joule,pa_power_w,dl_power_per_antenna_w,area_throughput_gbit_s_km2",
        &rows,
    )?;
    println!("curves for M in [{}, {}] -> {}", cfg.m_min, cfg.m_max, path.display());
    Ok(())
}

fn cmd_montecarlo(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let sc = cfg.scenario.build(Regime::PerfectCsi)?;
    // Anchor at the analytic ZF optimum; the configured scheme is then
    // simulated at that operating point.
    let start = DesignPoint::new(3, 1, 1.0)?;
    let opt = alternating_optimize(&cfg.profile, &sc, start, 50)?.point;
    let mode = match cfg.regime()? {
        Regime::ImperfectCsi => CsiMode::Imperfect {
            rho: opt.rho,
            tau_ul: cfg.profile.tau_ul,
        },
        _ => CsiMode::Perfect,
    };
    let outn = estimate_ee(
        &cfg.profile,
        &sc,
        cfg.scheme,
        opt.m,
        opt.k,
        RateTarget::Rho(opt.rho),
        cfg.trials,
        cfg.seed,
        mode,
    )?;
    let rows = vec![format!(
        "{},{},{},{},{},{},{},{},{},{}",
        opt.m,
        opt.k,
        opt.rho,
        outn.ee.mean,
        outn.ee.half_width_95,
        outn.ee.trials,
        outn.pa_power_w.mean,
        outn.pa_power_w.half_width_95,
        outn.dl_radiated_per_antenna_w,
        outn.feasibility
    )];
    let path = write_csv(
        out,
        "montecarlo.csv",
        "M,K,rho,ee_mean_bit_per_joule,ee_half_width_95,trials,pa_power_mean_w,pa_power_half_width_95,dl_power_per_antenna_w,feasibility",
        &rows,
    )?;
    println!(
        "MC at (M, K, rho) = ({}, {}, {:.4}): EE = {:.4e} +/- {:.2e} bit/J -> {}",
        opt.m,
        opt.k,
        opt.rho,
        outn.ee.mean,
        outn.ee.half_width_95,
        path.display()
    );
    Ok(())
}

fn cmd_multicell(cfg: &ExperimentConfig, out: &Path) -> Result<()> {
    let mut cfg = cfg.clone();
    cfg.regime_name = "multicell".into();
    let mut rows = Vec::new();
    for reuse in [1u32, 2, 4] {
        cfg.reuse_factor = reuse;
        let regime = cfg.regime()?;
        let sc = cfg.scenario.build(regime)?;
        let mc = MulticellScenario::new(&sc, reuse)?;
        let (best, _) = exhaustive_search(
            &cfg.profile,
            &sc,
            regime,
            cfg.scheme,
            cfg.m_min..=cfg.m_max,
            cfg.k_min..=cfg.k_cap(),
            Some(&mc),
        )?;
        let res = evaluate_ee(&cfg.profile, &sc, cfg.scheme, regime, Some(&mc), best)?;
        let se = res.gross_rate / cfg.profile.bandwidth_hz;
        rows.push(format!(
            "{},{},{},{},{},{},{},{},{}",
            reuse, mc.i_pc, mc.i_pc2, mc.i_total, best.m, best.k, best.rho, res.ee, se
        ));
        println!(
            "reuse {reuse}: I_pc = {:.4}, I_pc2 = {:.3e}, I = {:.4}; optimum (M, K) = ({}, {}), SE = {:.3} bit/symbol",
            mc.i_pc, mc.i_pc2, mc.i_total, best.m, best.k, se
        );
    }
    let path = write_csv(
        out,
        "multicell.csv",
        "reuse,i_pc,i_pc2,i_total,M_star,K_star,rho_star,ee_bit_per_joule,se_bit_per_symbol",
        &rows,
    )?;
    println!("reuse comparison -> {}", path.display());
    Ok(())
}

fn cmd_check(cfg: &ExperimentConfig) -> Result<bool> {
    let sc = cfg.scenario.build(Regime::PerfectCsi)?;
    let p = &cfg.profile;
    let mut all_ok = true;
    let mut report = |name: &str, ok: bool| {
        println!("{} {}", if ok { "PASS" } else { "FAIL" }, name);
        all_ok &= ok;
    };

    // Lambert W inverts w e^w across the dynamic range used here.
    let lambert_ok = (-18..=14).all(|e| {
        let x = 10f64.powi(e);
        ee_mimo::specfun::lambert_w0(x)
            .map(|w| (w * w.exp() - x).abs() <= 1e-12 * x.max(1.0))
            .unwrap_or(false)
    });
    report("lambert_w_inverts_w_exp_w", lambert_ok);

    // Circuit-power polynomial collapse is exact for ZF.
    let co = CircuitCoefficients::from_profile(p);
    let bd = ee_mimo::circuit_power(p, Scheme::Zf, 165, 104, 2e9)?;
    let poly = co.c_poly(104.0) + 165.0 * co.d_poly(104.0) + co.a * 2e9;
    report(
        "circuit_power_polynomial_identity",
        (bd.total() / poly - 1.0).abs() < 1e-12,
    );

    // Closed forms agree with their 1-D oracles at the headline point.
    let rho = optimal_rho(p, &sc, 165, 104)?;
    report("optimal_rho_reference", (rho - 0.8747).abs() < 1e-3);
    let m = ee_mimo::optimal_antennas(p, &sc, 104, rho)?;
    report("optimal_antennas_reference", m == 165);
    let k = ee_mimo::optimal_users(p, &sc, 165.0 / 104.0, rho * 104.0)?;
    report("optimal_users_reference", k == 104);

    let run = alternating_optimize(p, &sc, DesignPoint::new(3, 1, 1.0)?, 10)?;
    report(
        "alternating_converges_to_global_optimum",
        run.converged && run.point.m == 165 && run.point.k == 104,
    );

    let zf_flops = complexity_flops(p, Scheme::Zf, 165, 104);
    report(
        "complexity_reference_zf",
        (zf_flops / 711e9 - 1.0).abs() < 0.02,
    );

    let sq = {
        let mut s = cfg.scenario.clone();
        s.geometry = Some("square".into());
        s.build(Regime::Multicell { reuse_factor: 1 })?
    };
    let mc1 = MulticellScenario::new(&sq, 1)?;
    report(
        "multicell_aggregates_reuse1",
        (mc1.i_pc / 0.5288 - 1.0).abs() < 0.05 && (mc1.i_total / 1.5288 - 1.0).abs() < 0.05,
    );

    let (emp, ana) = ee_mimo::montecarlo::wishart_inverse_trace_check(&sc, 20, 10, 20_000, cfg.seed)?;
    report("wishart_inverse_trace", (emp / ana - 1.0).abs() < 0.03);

    Ok(all_ok)
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    build_thread_pool();
    let cfg = load(&cli)?;
    match cli.command {
        Command::Optimize => cmd_optimize(&cfg, &cli.out).map(|_| true),
        Command::Sweep => cmd_sweep(&cfg, &cli.out).map(|_| true),
        Command::Curves => cmd_curves(&cfg, &cli.out).map(|_| true),
        Command::Montecarlo => cmd_montecarlo(&cfg, &cli.out).map(|_| true),
        Command::Multicell => cmd_multicell(&cfg, &cli.out).map(|_| true),
        Command::Check => cmd_check(&cfg),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::ConfigParse { .. } | Error::ConfigInvalid(_) | Error::Io(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
