//! Command implementations.

use serde_json::json;
use spinwire::chains::{
    coupling_ratio, krawtchouk_chain, surgered_chain, surgered_spectral_data,
};
use spinwire::transfer::{check_pst as transfer_check_pst, optimize_time, transfer_report};
use spinwire::{ChainFamily, JacobiMatrix, SpectralData};

use crate::chainfile::{ChainFile, ChainMeta};
use crate::output::{emit, full, short, Document, Table};
use crate::{
    CheckPstArgs, CliError, DesignArgs, EvolveArgs, FamilyKind, OptimizeArgs, SourceArgs,
    SpectrumArgs, SweepArgs,
};

impl SourceArgs {
    fn family(&self) -> Result<ChainFamily, CliError> {
        let kind = self.family.ok_or_else(|| {
            CliError::usage("either --family or --chain is required")
        })?;
        match kind {
            FamilyKind::Uniform => {
                let m = self
                    .m
                    .ok_or_else(|| CliError::usage("--family uniform requires --m"))?;
                Ok(ChainFamily::Uniform { m, k: self.k })
            }
            FamilyKind::Krawtchouk => {
                let n = self
                    .n
                    .ok_or_else(|| CliError::usage("--family krawtchouk requires --n"))?;
                Ok(ChainFamily::Krawtchouk { n, k: self.k })
            }
            FamilyKind::Surgered => {
                let n = self
                    .n
                    .ok_or_else(|| CliError::usage("--family surgered requires --n"))?;
                let m = self
                    .m
                    .ok_or_else(|| CliError::usage("--family surgered requires --m"))?;
                Ok(ChainFamily::Surgered { n, m, k: self.k })
            }
        }
    }

    fn resolve(&self) -> Result<(JacobiMatrix, ChainMeta), CliError> {
        if let Some(path) = &self.chain {
            let file = ChainFile::load(path)?;
            let chain = file.to_chain()?;
            return Ok((chain, file.meta));
        }
        let family = self.family()?;
        Ok((family.build()?, family.into()))
    }
}

/// Surgered-window parameters of a normalizable chain: (N, M, K).
/// The uniform family is the M = N member of the surgered family.
fn normalized_params(meta: ChainMeta) -> Result<(usize, usize, f64), CliError> {
    match meta {
        ChainMeta::Uniform { m, k } => Ok((m, m, k)),
        ChainMeta::Surgered { n, m, k } => Ok((n, m, k)),
        _ => Err(CliError::usage(
            "--normalized requires a uniform or surgered chain",
        )),
    }
}

pub fn design(args: DesignArgs) -> Result<(), CliError> {
    if args.source.chain.is_some() {
        return Err(CliError::usage("design builds family chains; --chain is not accepted"));
    }
    let family = args.source.family()?;
    let chain = family.build()?;
    let file = ChainFile::from_chain(&chain, family.into());
    file.save(&args.out)?;

    let summary = json!({
        "n_sites": chain.n_sites(),
        "coupling_ratio": coupling_ratio(&chain),
        "persymmetric": chain.is_persymmetric(1e-12),
    });
    crate::output::print_stdout(&format!("{summary}\n"))
}

pub fn spectrum(args: SpectrumArgs, verbose: bool) -> Result<(), CliError> {
    let spectral = if args.normalized {
        let (_, meta) = args.source.resolve()?;
        let (n, m, k) = normalized_params(meta)?;
        surgered_spectral_data(n, m, k, true)?
    } else {
        let (chain, _) = args.source.resolve()?;
        chain.eigendecompose()?
    };

    let mut table = Table::new(vec!["s", "x_s", "w_s"]);
    for (s, (&x, &w)) in spectral
        .eigenvalues()
        .iter()
        .zip(spectral.weights())
        .enumerate()
    {
        table.push(
            vec![s.to_string(), full(x), full(w)],
            vec![json!(s), json!(x), json!(w)],
        );
    }
    emit(
        &Document::one(table).render(args.format, verbose),
        args.out.as_ref(),
    )
}

pub fn evolve(args: EvolveArgs, verbose: bool) -> Result<(), CliError> {
    let (chain, meta) = args.source.resolve()?;
    // Scaling the spectrum by M+2 is the same evolution run M+2 times longer.
    let effective_time = if args.normalized {
        let (_, m, _) = normalized_params(meta)?;
        args.time * (m as f64 + 2.0)
    } else {
        args.time
    };
    let report = transfer_report(&chain, effective_time)?;

    let mut header = Table::new(vec!["T", "re_A", "im_A", "abs_A", "delta"]);
    let amplitude = report.amplitude;
    header.push(
        vec![
            full(args.time),
            full(amplitude.re),
            full(amplitude.im),
            full(amplitude.norm()),
            short(report.deficit),
        ],
        vec![
            json!(args.time),
            json!(amplitude.re),
            json!(amplitude.im),
            json!(amplitude.norm()),
            json!(report.deficit),
        ],
    );
    let mut profile = Table::new(vec!["site", "probability"]);
    for (site, &p) in report
        .site_probabilities
        .as_deref()
        .unwrap_or_default()
        .iter()
        .enumerate()
    {
        profile.push(
            vec![site.to_string(), full(p)],
            vec![json!(site), json!(p)],
        );
    }
    emit(
        &Document::named(vec![("report", header), ("profile", profile)])
            .render(args.format, verbose),
        args.out.as_ref(),
    )
}

fn spectral_for_search(
    source: &SourceArgs,
    normalized: bool,
) -> Result<SpectralData, CliError> {
    if normalized {
        let (_, meta) = source.resolve()?;
        let (n, m, k) = normalized_params(meta)?;
        Ok(surgered_spectral_data(n, m, k, true)?)
    } else {
        let (chain, _) = source.resolve()?;
        // the deficit search runs on the persymmetric amplitude formula
        if !chain.is_persymmetric(1e-8) {
            return Err(CliError::usage(
                "optimize requires a persymmetric chain (mirror-symmetric couplings and fields)",
            ));
        }
        Ok(chain.eigendecompose()?)
    }
}

pub fn optimize(args: OptimizeArgs, verbose: bool) -> Result<(), CliError> {
    let t0 = match (args.t0, args.normalized) {
        (Some(t0), _) => t0,
        (None, true) => 0.5,
        (None, false) => {
            return Err(CliError::usage(
                "--t0 is required unless --normalized is set (where it defaults to 0.5)",
            ))
        }
    };
    let spectral = spectral_for_search(&args.source, args.normalized)?;
    let (t_star, delta_star) = optimize_time(&spectral, t0, args.window, args.grid, args.tol)?;

    let mut table = Table::new(vec!["t_star", "delta_star"]);
    table.push(
        vec![full(t_star), short(delta_star)],
        vec![json!(t_star), json!(delta_star)],
    );
    emit(
        &Document::one(table).render(args.format, verbose),
        args.out.as_ref(),
    )
}

pub fn check_pst(args: CheckPstArgs, verbose: bool) -> Result<(), CliError> {
    let (chain, _) = args.source.resolve()?;
    let report = transfer_check_pst(&chain, args.rel_tol, args.qmax)?;

    let mut table = Table::new(vec![
        "persymmetric",
        "is_pst",
        "kappa",
        "multipliers",
        "gcd",
        "minimal_time",
    ]);
    let (kappa, multipliers, gcd, minimal_time) = match &report.gap_fit {
        Some(fit) => (
            full(fit.kappa),
            fit.multipliers
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(";"),
            fit.gcd.to_string(),
            full(fit.minimal_time),
        ),
        None => (String::new(), String::new(), String::new(), String::new()),
    };
    let fit_json = report.gap_fit.as_ref().map(|fit| {
        json!({
            "kappa": fit.kappa,
            "multipliers": fit.multipliers,
            "gcd": fit.gcd,
            "minimal_time": fit.minimal_time,
        })
    });
    table.push(
        vec![
            report.persymmetric.to_string(),
            report.is_pst.to_string(),
            kappa,
            multipliers,
            gcd,
            minimal_time,
        ],
        vec![
            json!(report.persymmetric),
            json!(report.is_pst),
            fit_json.as_ref().map_or(json!(null), |f| f["kappa"].clone()),
            fit_json
                .as_ref()
                .map_or(json!(null), |f| f["multipliers"].clone()),
            fit_json.as_ref().map_or(json!(null), |f| f["gcd"].clone()),
            fit_json
                .as_ref()
                .map_or(json!(null), |f| f["minimal_time"].clone()),
        ],
    );
    emit(
        &Document::one(table).render(args.format, verbose),
        args.out.as_ref(),
    )
}

pub fn sweep(args: SweepArgs, verbose: bool) -> Result<(), CliError> {
    let document = if args.profile {
        let mut table = Table::new(vec!["N", "M", "l", "J_l", "J_l_over_J1"]);
        for &m in &args.m_list {
            let chain = surgered_chain(args.n, m, args.k)?;
            let j1 = chain.couplings()[0];
            for (idx, &j) in chain.couplings().iter().enumerate() {
                table.push(
                    vec![
                        args.n.to_string(),
                        m.to_string(),
                        (idx + 1).to_string(),
                        full(j),
                        full(j / j1),
                    ],
                    vec![
                        json!(args.n),
                        json!(m),
                        json!(idx + 1),
                        json!(j),
                        json!(j / j1),
                    ],
                );
            }
        }
        Document::one(table)
    } else {
        let ratio_k = coupling_ratio(&krawtchouk_chain(args.n, args.k)?);
        let mut table = Table::new(vec!["N", "M", "T", "delta", "ratio_RS", "ratio_RK"]);
        for &m in &args.m_list {
            let spectral = surgered_spectral_data(args.n, m, args.k, true)?;
            let (t_star, delta_star) =
                optimize_time(&spectral, args.t0, args.window, args.grid, args.tol)?;
            let ratio_s = coupling_ratio(&surgered_chain(args.n, m, args.k)?);
            table.push(
                vec![
                    args.n.to_string(),
                    m.to_string(),
                    full(t_star),
                    short(delta_star),
                    full(ratio_s),
                    full(ratio_k),
                ],
                vec![
                    json!(args.n),
                    json!(m),
                    json!(t_star),
                    json!(delta_star),
                    json!(ratio_s),
                    json!(ratio_k),
                ],
            );
        }
        Document::one(table)
    };
    emit(&document.render(args.format, verbose), args.out.as_ref())
}
