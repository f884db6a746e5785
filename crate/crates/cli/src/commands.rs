//! The build / lift / lfun pipeline behind the CLI verbs.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use padic_lfun::coeffs::Weight;
use padic_lfun::lfun::{build_mu, ev_phi, evaluate_mu, RayClassDistribution, RepTable};
use padic_lfun::lift::{iterate_control, naive_lift, EigenData};
use padic_lfun::persist::{Artifact, EigenBody, EvalLine, EvalReport, LiftBody, MuBody};
use padic_lfun::symbols::{eigensymbol, is_small_slope, ClassicalSpace, ManinData, PSymbol};
use padic_lfun::{Error, NumberFieldData, PAdicElement, Result};

use crate::config::JobConfig;

pub struct Paths {
    pub eigen: PathBuf,
    pub lift: PathBuf,
    pub mu: PathBuf,
    pub report: PathBuf,
    pub report_txt: PathBuf,
}

impl Paths {
    pub fn new(out: &Path) -> Self {
        Paths {
            eigen: out.join("eigensymbol.json"),
            lift: out.join("lift.json"),
            mu: out.join("mu.json"),
            report: out.join("report.json"),
            report_txt: out.join("report.txt"),
        }
    }
}

/// Loads a field (built-in name or file) and summarises it.
pub fn field_validate(name_or_path: &str) -> Result<String> {
    let path = Path::new(name_or_path);
    let f = if path.exists() { NumberFieldData::load(path)? } else { NumberFieldData::builtin(name_or_path)? };
    Ok(format!(
        "field {}: degree {}, signature ({}, {}), {} unit generator(s)",
        f.name(),
        f.degree(),
        f.r1(),
        f.r2(),
        f.unit_generators().len()
    ))
}

fn manin(cfg: &JobConfig) -> Result<Arc<ManinData>> {
    if cfg.field_data()?.degree() != 1 {
        return Err(Error::Unsupported("modular symbols are implemented for F = Q".into()));
    }
    Ok(Arc::new(ManinData::new(cfg.level)?))
}

/// Classical eigensymbol, written to eigensymbol.json.
pub fn symbol_build(cfg: &JobConfig) -> Result<Artifact<EigenBody>> {
    let ctx = cfg.ctx()?;
    let space = ClassicalSpace::new(manin(cfg)?, cfg.weight, cfg.v)?;
    let e = eigensymbol(&space, &cfg.eigen, cfg.p, &ctx)?;
    let body = EigenBody {
        field: cfg.field.clone(),
        level: cfg.level,
        k: cfg.weight,
        v: cfg.v,
        p: cfg.p,
        precision: cfg.precision,
        eigen: cfg.eigen.clone(),
        lambda: e.lambda.to_record(),
        charpoly: e.charpoly.iter().map(|c| c.to_string()).collect(),
        symbol: e.phi.to_record(),
    };
    let art = Artifact::new("eigensymbol", body)?;
    art.write(&Paths::new(&cfg.out).eigen)?;
    Ok(art)
}

fn eigen_parts(cfg: &JobConfig, art: &Artifact<EigenBody>) -> Result<(PSymbol, PAdicElement)> {
    let ctx = cfg.ctx()?;
    Ok((PSymbol::from_record(manin(cfg)?, &ctx, &art.body.symbol)?, PAdicElement::from_record(&ctx, &art.body.lambda)?))
}

fn check_small_slope(cfg: &JobConfig, lambda: &PAdicElement) -> Result<()> {
    let q = cfg.field_data()?;
    let w = Weight::new(&q, vec![cfg.weight], vec![cfg.v])?;
    if !is_small_slope(&w, &q.local_primes(cfg.p, cfg.precision)?, std::slice::from_ref(lambda)) {
        return Err(Error::Precondition(format!("slope {:?} is not small for weight {}", lambda.vp(), cfg.weight)));
    }
    Ok(())
}

/// Overconvergent lift, written to lift.json.
pub fn symbol_lift(cfg: &JobConfig) -> Result<Artifact<LiftBody>> {
    let eig = symbol_build(cfg)?;
    let (phi, lambda) = eigen_parts(cfg, &eig)?;
    check_small_slope(cfg, &lambda)?;
    let psi0 = naive_lift(&phi, cfg.moments, cfg.seed)?;
    let (psi, report) = iterate_control(&psi0, &[EigenData { p: cfg.p, lambda: lambda.clone() }], None)?;
    let body = LiftBody {
        field: cfg.field.clone(),
        level: cfg.level,
        k: cfg.weight,
        v: cfg.v,
        p: cfg.p,
        precision: cfg.precision,
        moments: cfg.moments,
        uniformizer: cfg.p.to_string(),
        seed: cfg.seed,
        lambda: lambda.to_record(),
        source_hash: eig.content_hash.clone(),
        report,
        symbol: psi.to_record(),
    };
    let art = Artifact::new("lift", body)?;
    art.write(&Paths::new(&cfg.out).lift)?;
    Ok(art)
}

/// A persisted lift is reused when it was made from the same eigensymbol
/// with the same M, N and seed.
pub fn lift_for(cfg: &JobConfig) -> Result<(Artifact<LiftBody>, bool)> {
    let path = Paths::new(&cfg.out).lift;
    if path.exists() {
        let eig = symbol_build(cfg)?;
        if let Ok(old) = Artifact::<LiftBody>::read(&path, "lift") {
            let b = &old.body;
            if b.source_hash == eig.content_hash && b.moments == cfg.moments && b.precision == cfg.precision && b.seed == cfg.seed {
                return Ok((old, true));
            }
        }
    }
    Ok((symbol_lift(cfg)?, false))
}

pub struct LfunOutcome {
    pub mu: Artifact<MuBody>,
    pub report: Artifact<EvalReport>,
    pub reused_lift: bool,
}

/// μ at f = p^modulus and the character report.
pub fn lfun_compute(cfg: &JobConfig) -> Result<LfunOutcome> {
    let (lift, reused_lift) = lift_for(cfg)?;
    let ctx = cfg.ctx()?;
    let psi = PSymbol::from_record(manin(cfg)?, &ctx, &lift.body.symbol)?;
    let lambda = PAdicElement::from_record(&ctx, &lift.body.lambda)?;
    let mu = build_mu(&psi, &lambda, &RepTable::canonical(cfg.p, cfg.modulus)?)?;
    let mu_art = Artifact::new("mu", MuBody::from_mu(&mu, &lift.content_hash)?)?;
    mu_art.write(&Paths::new(&cfg.out).mu)?;
    let report = write_report(cfg, &mu, &mu_art.content_hash)?;
    Ok(LfunOutcome { mu: mu_art, report, reused_lift })
}

/// Evaluates the character battery against a persisted μ.
pub fn lfun_eval(cfg: &JobConfig) -> Result<Artifact<EvalReport>> {
    let art = Artifact::<MuBody>::read(&Paths::new(&cfg.out).mu, "mu")?;
    let mu = art.body.to_mu(&cfg.ctx()?)?;
    write_report(cfg, &mu, &art.content_hash)
}

fn write_report(cfg: &JobConfig, mu: &RayClassDistribution, mu_hash: &str) -> Result<Artifact<EvalReport>> {
    let paths = Paths::new(&cfg.out);
    let phi = match Artifact::<EigenBody>::read(&paths.eigen, "eigensymbol") {
        Ok(a) => Some(eigen_parts(cfg, &a)?.0),
        Err(_) => None,
    };
    let mut lines = Vec::new();
    for c in &cfg.characters {
        let chi = cfg.character(c)?;
        let value = evaluate_mu(mu, &chi)?;
        let classical = match &phi {
            // λ_f⁻¹ Ev_{φ,2}(φsym)
            Some(phi) => {
                let mut li = mu.lambda_f_inv.clone();
                if chi.l.degree() > 1 {
                    li = li.embed(&chi.l)?;
                }
                Some(ev_phi(phi, &chi, &mu.reps, 2)?.mul(&li)?)
            }
            None => None,
        };
        lines.push(EvalLine {
            character: c.name.clone(),
            value: value.to_string(),
            record: value.to_record(),
            agrees: classical.as_ref().map(|x| x.eq_at_prec(&value)),
            classical: classical.map(|x| x.to_string()),
        });
    }
    let art = Artifact::new("report", EvalReport { mu_hash: mu_hash.into(), lines })?;
    art.write(&paths.report)?;
    let mut txt = format!("# mu {mu_hash}\n# character\tvalue\tclassical\tagrees\n");
    for l in &art.body.lines {
        let agrees = l.agrees.map_or("-".to_string(), |b| b.to_string());
        txt.push_str(&format!("{}\t{}\t{}\t{}\n", l.character, l.value, l.classical.as_deref().unwrap_or("-"), agrees));
    }
    std::fs::write(&paths.report_txt, txt).map_err(|e| Error::Io(e.to_string()))?;
    Ok(art)
}
