use std::error::Error;
use std::io::Write;

use serde_json::{json, Value};
use siegel_core::census::cache::{ell_path, ell_to_json, write_atomic};
use siegel_core::census::{ell_census, g2_census_checkpointed, CensusError, CensusStore, EnumerationOrder};
use siegel_core::cohom::{lambda_psq, trace_t_sjk};
use siegel_core::exact_arith::{rat_from_str, rat_to_string, Rat};
use siegel_core::g1_modforms::{congruence_prime_scan, critical_ratios, eigenforms, eigenforms_prec, lambda_values};
use siegel_core::harder::{check_congruence, run_table, CongruenceResult, RowStatus, Sources};
use siegel_core::hecke_satake::{newton_slopes, spin_factor, verify_identity, EulerFactor, Identity};
use siegel_core::siegel_g2::{chi10, chi12, eisenstein_g2, SiegelCoeffTable};

use crate::config::Config;
use crate::{Command, Flags, G1Mode, HarderMode, SatakeMode};

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn assertion(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }

    /// Missing caches exit with 2 and field-size limits with 3, wherever they
    /// sit in the error chain.
    fn from_error(e: &(dyn Error + 'static)) -> Self {
        let message = e.to_string();
        let mut cur = Some(e);
        while let Some(err) = cur {
            if let Some(c) = err.downcast_ref::<CensusError>() {
                let code = match c {
                    CensusError::Missing { .. } => 2,
                    CensusError::FieldTooLarge { .. } => 3,
                    _ => 1,
                };
                return Failure { code, message };
            }
            cur = err.source();
        }
        Failure { code: 1, message }
    }
}

fn fail<E: Error + 'static>(e: E) -> Failure {
    Failure::from_error(&e)
}

fn emit(flags: &Flags, value: &Value, human: &str, cite: &str) {
    // a closed pipe downstream is not an error worth reporting
    let mut out = std::io::stdout().lock();
    let _ = if flags.json {
        writeln!(out, "{}", serde_json::to_string_pretty(value).expect("JSON values serialize"))
    } else {
        write!(out, "{human}")
    };
    if flags.cite {
        eprintln!("reproduces: {cite}");
    }
}

fn store(config: &Config, flags: &Flags) -> CensusStore {
    CensusStore::on_disk(&config.cache_dir, config.max_q_g2, flags.cached_only)
}

pub fn dispatch(config: &Config, flags: &Flags, cmd: &Command) -> Result<(), Failure> {
    match cmd {
        Command::Census { genus, q, ext } => census(config, flags, *genus, *q, *ext),
        Command::Trace { j, k, p, psq } => trace(config, flags, *j, *k, *p, *psq),
        Command::Igusa { form, max_disc } => igusa(flags, form, *max_disc),
        Command::G1 { weight, mode } => g1(config, flags, *weight, mode),
        Command::Satake { mode } => satake(flags, mode),
        Command::Harder { mode, pmax } => harder(config, flags, mode, *pmax),
    }
}

fn census(config: &Config, flags: &Flags, genus: u8, q: u64, ext: u32) -> Result<(), Failure> {
    let size = q.checked_pow(ext).ok_or_else(|| Failure::config("field size overflows"))?;
    let (mass, models, classes) = if genus == 1 {
        let c = if flags.cached_only {
            store(config, flags).ell(size).map_err(fail)?.as_ref().clone()
        } else {
            let c = ell_census(size).map_err(fail)?;
            write_atomic(&ell_path(&config.cache_dir, size), &ell_to_json(&c).to_string()).map_err(fail)?;
            c
        };
        (c.total_mass(), c.model_count, c.masses.len())
    } else {
        if size % 2 == 0 && !config.enable_char2 {
            return Err(Failure::config(format!("q = {size} is even; pass --enable-char2")));
        }
        let c = if flags.cached_only {
            store(config, flags).g2(size).map_err(fail)?.as_ref().clone()
        } else {
            g2_census_checkpointed(size, EnumerationOrder::Ascending, config.max_q_g2, &config.cache_dir, flags.resume)
                .map_err(fail)?
        };
        (c.total_mass(), c.model_count, c.masses.len())
    };
    let value = json!({
        "genus": genus,
        "q": size,
        "mass": rat_to_string(&mass),
        "model_count": models,
        "frobenius_classes": classes,
    });
    let human = format!("genus {genus}, q = {size}\nmass {}\nmodels {models}\n", rat_to_string(&mass));
    let cite = if genus == 1 { "elliptic curve mass over F_q (total q)" } else { "genus-2 curve mass over F_q (total q^3)" };
    emit(flags, &value, &human, cite);
    Ok(())
}

fn trace(config: &Config, flags: &Flags, j: i64, k: i64, p: u64, psq: bool) -> Result<(), Failure> {
    let store = store(config, flags);
    if psq {
        let v = lambda_psq(j, k, p, &store).map_err(fail)?;
        let value = json!({"j": j, "k": k, "p": p, "lambda_psq": rat_to_string(&v), "conditional": true});
        let human = format!("CONDITIONAL (endoscopic term assumed)\nλ(p²) on S_{{{j},{k}}} at p = {p}: {}\n", rat_to_string(&v));
        emit(flags, &value, &human, "T(p²) eigenvalues on one-dimensional S_{j,k}");
        return Ok(());
    }
    let rep = trace_t_sjk(j, k, p, &store).map_err(fail)?;
    let value = serde_json::to_value(&rep).expect("report serializes");
    let what = if rep.is_eigenvalue() { "eigenvalue" } else { "trace" };
    let human = format!(
        "CONDITIONAL (endoscopic term assumed)\nTr T({p}) on S_{{{j},{k}}}: {}  [{what}, dim {}]\n  point-count sum {}\n  Eisenstein {}\n  endoscopic {}\n",
        rat_to_string(&rep.result),
        rep.dim.map_or("unknown".to_string(), |d| d.to_string()),
        rat_to_string(&rep.full_sum),
        rat_to_string(&rep.eis),
        rat_to_string(&rep.endo),
    );
    emit(flags, &value, &human, "T(p) eigenvalues on S_{j,k} for p = 3, 5, 7");
    Ok(())
}

fn igusa(flags: &Flags, form: &str, max_disc: i64) -> Result<(), Failure> {
    let t: SiegelCoeffTable = match form {
        "E4" => eisenstein_g2(4, max_disc),
        "E6" => eisenstein_g2(6, max_disc),
        "E10" => eisenstein_g2(10, max_disc),
        "E12" => eisenstein_g2(12, max_disc),
        "chi10" => chi10(max_disc),
        "chi12" => chi12(max_disc),
        _ => unreachable!("clap restricts the form"),
    }
    .map_err(|e| Failure::config(e.to_string()))?;
    let value = json!({"form": form, "k": t.k, "max_disc": max_disc, "coeffs": t});
    let mut rows: Vec<_> = t.iter().collect();
    rows.sort_by_key(|(x, _)| (x.disc(), x.n, x.r, x.m));
    let mut human = format!("{form} (weight {}), 4nm - r^2 <= {max_disc}\n", t.k);
    for (x, v) in rows {
        human += &format!("{x}\t{}\n", rat_to_string(v));
    }
    emit(flags, &value, &human, "Fourier coefficients of the Siegel Eisenstein series and Igusa cusp forms");
    Ok(())
}

fn g1(config: &Config, flags: &Flags, weight: i64, mode: &G1Mode) -> Result<(), Failure> {
    if let Some(pmax) = mode.hecke {
        let forms = eigenforms_prec(weight, pmax as usize + 1).map_err(fail)?;
        let value = json!({"weight": weight, "forms": forms.iter().map(|f| f.to_json(pmax)).collect::<Vec<_>>()});
        let mut human = format!("S_{weight}: {} eigenform(s)\n", forms.len());
        for (i, f) in forms.iter().enumerate() {
            human += &format!("f{}", i + 1);
            if f.field_disc != 1 {
                human += &format!(" (Q(sqrt {}))", f.field_disc);
            }
            human += "\n";
            for (p, a) in f.a_p_map(pmax) {
                human += &format!("  a({p}) = {a}\n");
            }
        }
        emit(flags, &value, &human, "Hecke eigenvalues of level-one eigenforms");
    } else if mode.ratios {
        let forms = eigenforms(weight).map_err(fail)?;
        if forms.len() != 1 {
            return Err(Failure::config(format!("dim S_{weight} = {}; ratios need a rational eigenform", forms.len())));
        }
        let ratios = critical_ratios(&forms[0]).map_err(fail)?;
        let vals = lambda_values(&forms[0], config.precision_bits).map_err(fail)?;
        let digits = (config.precision_bits as f64 * 0.30103) as usize - 6;
        let value = json!({
            "weight": weight,
            "ratios": ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "precision_bits": config.precision_bits,
            "values": vals.values.iter().map(|(t, v)| json!([t, v.to_sci(digits)])).collect::<Vec<_>>(),
        });
        let human = ratios.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ") + "\n";
        emit(flags, &value, &human, "ratios of critical values of L(f, s) over the even class");
    } else {
        let rows = congruence_prime_scan(weight).map_err(fail)?;
        let value = json!({"weight": weight, "rows": rows.iter().map(|(l, t, j, k)| json!({"ell": l, "t": t, "j": j, "k": k})).collect::<Vec<_>>()});
        let mut human = String::from("l\tt\tj\tk\n");
        for (l, t, j, k) in &rows {
            human += &format!("{l}\t{t}\t{j}\t{k}\n");
        }
        emit(flags, &value, &human, "large primes dividing critical values and the predicted (j, k)");
    }
    Ok(())
}

fn parse_spin(args: &[String]) -> Result<(i64, i64, u64, Rat, Rat), Failure> {
    let int = |s: &String| s.parse::<i64>().map_err(|_| Failure::config(format!("not an integer: {s}")));
    let rat = |s: &String| rat_from_str(s).ok_or_else(|| Failure::config(format!("not a rational: {s}")));
    let (j, k, p) = (int(&args[0])?, int(&args[1])?, int(&args[2])?);
    if j < 0 || k < 3 || p < 2 {
        return Err(Failure::config("need j ≥ 0, k ≥ 3, p ≥ 2"));
    }
    Ok((j, k, p as u64, rat(&args[3])?, rat(&args[4])?))
}

fn factor_text(f: &EulerFactor) -> String {
    let mut s = String::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        let c = c.to_string();
        if i > 0 {
            s += " + ";
        }
        s += &match i {
            0 => c,
            1 => format!("({c})X"),
            _ => format!("({c})X^{i}"),
        };
    }
    s
}

fn satake(flags: &Flags, mode: &SatakeMode) -> Result<(), Failure> {
    if mode.verify_all {
        let results: Vec<(Identity, bool)> = Identity::ALL.iter().map(|&i| (i, verify_identity(i))).collect();
        let value = Value::Object(results.iter().map(|(i, b)| (i.name().to_string(), json!(b))).collect());
        let human: String = results.iter().map(|(i, b)| format!("{}: {b}\n", i.name())).collect();
        emit(flags, &value, &human, "identities in the genus-2 spherical Hecke algebra");
        if let Some((i, _)) = results.iter().find(|(_, b)| !b) {
            return Err(Failure::assertion(format!("identity {} does not hold", i.name())));
        }
    } else if let Some(args) = &mode.spin {
        let (j, k, p, lp, lp2) = parse_spin(args)?;
        let f = spin_factor(j, k, &lp, &lp2, p);
        let value = serde_json::to_value(&f).expect("factor serializes");
        let human = format!("Q_{p}(X) = {}\nfunctional equation: {}\n", factor_text(&f), f.has_functional_equation());
        emit(flags, &value, &human, "spinor Euler factors of genus-2 eigenforms");
    } else if let Some(args) = &mode.slopes {
        let (j, k, p, lp, lp2) = parse_spin(args)?;
        let f = spin_factor(j, k, &lp, &lp2, p);
        let slopes = newton_slopes(&f).map_err(fail)?;
        let strs: Vec<String> = slopes.iter().map(rat_to_string).collect();
        let value = json!({"j": j, "k": k, "p": p, "slopes": strs});
        emit(flags, &value, &(strs.join(" ") + "\n"), "p-adic slopes of the spinor Euler factor");
    }
    Ok(())
}

fn summary_line(c: &CongruenceResult) -> String {
    let status = match c.status {
        RowStatus::Verified => "verified",
        RowStatus::Failed => "FAILED",
        RowStatus::Untestable => "untestable",
    };
    let primes: std::collections::BTreeSet<u64> = c.entries.iter().map(|e| e.p).collect();
    let primes: Vec<String> = primes.iter().map(u64::to_string).collect();
    let mut s = format!("r = {}, (j, k) = ({}, {}), l = {}: {status}", c.r, c.j, c.k, c.ell);
    if !primes.is_empty() {
        s += &format!(" at p = {}", primes.join(", "));
    }
    if c.conditional {
        s += " (conditional)";
    }
    s + "\n"
}

fn harder(config: &Config, flags: &Flags, mode: &HarderMode, pmax: u64) -> Result<(), Failure> {
    let store = store(config, flags);
    let src = Sources::all(&store, config.max_q_g2);
    let results = match &mode.row {
        Some(row) => {
            let (r, j, k, ell) = (row[0], row[1], row[2], row[3]);
            if ell < 2 {
                return Err(Failure::config("l must be a prime"));
            }
            vec![check_congruence(j, k, r, ell as u64, pmax, &src).map_err(fail)?]
        }
        None => run_table(pmax, &src).map_err(fail)?,
    };
    let value = if results.len() == 1 && mode.row.is_some() {
        serde_json::to_value(&results[0])
    } else {
        serde_json::to_value(&results)
    }
    .expect("results serialize");
    let mut human: String = results.iter().map(summary_line).collect();
    let count = |s: RowStatus| results.iter().filter(|c| c.status == s).count();
    let failed = count(RowStatus::Failed);
    if mode.all {
        human += &format!(
            "{} verified, {failed} failed, {} untestable\n",
            count(RowStatus::Verified),
            count(RowStatus::Untestable)
        );
    }
    emit(flags, &value, &human, "congruences between Siegel eigenvalues and elliptic a(p)");
    if failed > 0 {
        return Err(Failure::assertion(format!("{failed} congruence(s) failed")));
    }
    Ok(())
}
