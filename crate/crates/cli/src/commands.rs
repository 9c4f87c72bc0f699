use std::io::Write;
use std::path::Path;

use golod_core::combinat::{count_j, enumerate_j, orbit_size, WeakTuple, DEFAULT_ENUMERATION_CAP};
use golod_core::freealg::random_homogeneous;
use golod_core::graded::export::{dimension_rows, rows_to_csv, rows_to_json};
use golod_core::graded::{build_table_with_cap, RSequence, DEFAULT_COLUMN_CAP};
use golod_core::gscore::{
    blueprint_table, build_blueprint_with_cap, check_blueprint, check_bound_conditions, format_rational,
    nil_certificate, reduce_p1_to_p2, toy_blueprint, verify_p2_recurrence, BoundCertificate, DegreeProfile,
    GSBlueprint, GSParams, Mode, Verification,
};
use golod_core::symfun::{h_generator, monomial_window, order_symmetric};
use golod_core::{Ambient, Error, Polynomial};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::input::{self, GeneratorFile};
use crate::{BoundArgs, ConstructArgs, DimsArgs, Failure, Format, JcountArgs, NilcheckArgs, SymfunArgs};

type Outcome = Result<(), Failure>;

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn random_generators(a: &DimsArgs, ambient: Ambient, count: usize) -> GeneratorFile {
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let (lo, hi) = a.random_degrees;
    let generators: Vec<Polynomial> = (0..count)
        .map(|_| {
            let degree = rng.gen_range(lo..=hi);
            random_homogeneous(ambient, degree, a.random_terms, &mut rng)
        })
        .collect();
    GeneratorFile { lines: (1..=generators.len()).collect(), generators }
}

pub fn dims(a: &DimsArgs) -> Outcome {
    let field = input::field(&a.field)?;
    let (source, file) = match (&a.gens, a.random) {
        (Some(path), _) => (path.display().to_string(), input::read_generators(path, a.d, field)?),
        (None, Some(count)) => {
            if a.random_degrees.0 < 2 {
                return Err(Failure::Usage("--random-degrees must start at 2 or more".into()));
            }
            let file = random_generators(a, Ambient::new(a.d, field), count);
            for g in &file.generators {
                eprintln!("# {g}");
            }
            ("random generator".into(), file)
        }
        (None, None) => ("no generators".into(), GeneratorFile { generators: Vec::new(), lines: Vec::new() }),
    };
    let cap = a.cap.unwrap_or(DEFAULT_COLUMN_CAP);
    let table = build_table_with_cap(&file.generators, a.d, field, a.maxdeg, cap).map_err(|e| {
        let at = |index: usize| file.lines.get(index).copied().unwrap_or(index + 1);
        match e {
            Error::NonHomogeneousGenerator { index } => {
                Failure::Usage(format!("{source}:{}: generator is not homogeneous", at(index)))
            }
            Error::DegreeBelowTwo { index, degree } => Failure::Usage(format!(
                "{source}:{}: DegreeBelowTwo: generator has degree {degree} < 2",
                at(index)
            )),
            other => Failure::from(other),
        }
    })?;
    let rows = dimension_rows(&table, &table.r_sequence());
    let text = match a.format {
        Format::Csv => rows_to_csv(&rows)?,
        Format::Json => rows_to_json(&rows)?,
    };
    emit(&text, a.out.as_deref())?;
    match rows.iter().find(|row| row.slack.is_some_and(|s| s < 0)) {
        Some(row) => Err(Failure::Check(format!("basic inequality slack is negative at degree {}", row.n))),
        None => Ok(()),
    }
}

fn summarize(bp: &GSBlueprint) -> String {
    let mut s = String::new();
    match &bp.params {
        Some(p) => s += &format!("blueprint {p} u={} mode={}\n", format_rational(&p.u()), bp.mode),
        None => s += &format!("toy blueprint d={} mode={}\n", bp.d, bp.mode),
    }
    for b in &bp.blocks {
        s += &format!("block {}: c={} c'={} q={} n={} |J|={}", b.k, b.c, b.c_prime, b.q, b.n, b.j_count);
        if let Some(m) = &b.margin {
            s += &format!(" margin={m}");
        }
        match &b.degrees {
            DegreeProfile::Exact(map) => {
                let degs: Vec<String> = map.iter().map(|(d, c)| format!("{d}:{c}")).collect();
                s += &format!(" r=[{}]", degs.join(","));
            }
            DegreeProfile::Envelope(e) => s += &format!(" degrees in [{}, {}]", e.lo, e.hi),
        }
        if let Some(g) = &b.generators {
            s += &format!(" generators={}", g.len());
        }
        s.push('\n');
    }
    s
}

fn report_invariants(bp: &GSBlueprint) -> Outcome {
    let check = check_blueprint(bp);
    let failures: Vec<String> =
        check.failures().map(|i| format!("block {} {}: {}", i.block, i.name, i.detail)).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(failures.join("; ")))
    }
}

pub fn construct(a: &ConstructArgs) -> Outcome {
    let bp = match (a.toy_c, a.toy_n, &a.eps) {
        (Some(c), Some(n), _) => toy_blueprint(a.d, c, n)?,
        (_, _, Some(eps)) => {
            let params = GSParams::new(a.d, input::rational(eps, "eps")?)?;
            let mode: Mode = a.mode.parse()?;
            build_blueprint_with_cap(&params, a.blocks, mode, a.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?
        }
        _ => return Err(Failure::Usage("give --eps or both --toy-c and --toy-n".into())),
    };
    let summary = summarize(&bp);
    match &a.out {
        Some(path) => {
            emit(&bp.to_json(), Some(path))?;
            print!("{summary}");
        }
        None => {
            eprint!("{summary}");
            emit(&bp.to_json(), None)?;
        }
    }
    report_invariants(&bp)
}

pub fn nilcheck(a: &NilcheckArgs) -> Outcome {
    let bp = GSBlueprint::load(&a.blueprint)?;
    let field = input::field(&a.field)?;
    let g = Polynomial::parse(&a.g, bp.d, field).map_err(|e| Failure::Usage(format!("--g: {e}")))?;
    let cert = nil_certificate(&g, &bp, None)?;
    if !a.verify {
        println!("n={} (block {})", cert.exponent, cert.block);
        return Ok(());
    }
    let degree = g.degree().unwrap_or(0);
    let maxdeg = cert
        .exponent
        .to_usize()
        .and_then(|n| n.checked_mul(degree))
        .ok_or_else(|| Failure::Usage(format!("degree of g^{} is too large to tabulate", cert.exponent)))?;
    let table = blueprint_table(&bp, field, maxdeg)?;
    let cert = nil_certificate(&g, &bp, Some(&table))?;
    match cert.verification {
        Verification::Verified => {
            println!("n={} verified", cert.exponent);
            Ok(())
        }
        Verification::Failed { degree } => {
            println!("n={} failed", cert.exponent);
            Err(Failure::Check(format!("component of degree {degree} of g^{} is not in the ideal", cert.exponent)))
        }
        Verification::NotChecked => Err(Failure::Usage("table does not reach the degree of g^n".into())),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cell(v: Option<bool>) -> &'static str {
    v.map_or("-", pass)
}

pub fn bound(a: &BoundArgs) -> Outcome {
    let cert = match (&a.eps, &a.v, &a.c, &a.u) {
        (Some(eps), ..) => reduce_p1_to_p2(&GSParams::new(a.d, input::rational(eps, "eps")?)?),
        (None, Some(v), Some(c), Some(u)) => BoundCertificate::new(
            a.d,
            input::rational(v, "v")?,
            input::rational(c, "c")?,
            input::rational(u, "u")?,
        )?,
        _ => return Err(Failure::Usage("give --eps or all of --v, --c, --u".into())),
    };
    let mut ok = true;
    let blueprint = a.blueprint.as_deref().map(GSBlueprint::load).transpose()?;
    let r = match (&a.r, &blueprint) {
        (Some(text), _) => RSequence::parse(text)?,
        (None, Some(bp)) => {
            if bp.d != a.d {
                return Err(Failure::Usage(format!("blueprint has d={}, --d is {}", bp.d, a.d)));
            }
            bp.r().exact
        }
        (None, None) => RSequence::new(),
    };
    println!(
        "certificate: d={} v={} c={} u={}",
        cert.d,
        format_rational(&cert.v),
        format_rational(&cert.c),
        format_rational(&cert.u)
    );
    let verdict = check_bound_conditions(&r, &cert, u64::MAX);
    match verdict.first_violation {
        Some(deg) => println!("condition (a): FAIL at degree {deg} (r_{deg} = {})", r.get(deg)),
        None => println!("condition (a): pass (r = {})", if r.is_empty() { "0".into() } else { r.to_string() }),
    }
    println!(
        "condition (b): (vd-c)/(v+u) = {} >= v = {}: {}",
        format_rational(&cert.condition_b_value()),
        format_rational(&cert.v),
        pass(verdict.condition_b)
    );
    ok &= verdict.passed();
    if let Some(bp) = &blueprint {
        if !bp.r().envelopes.is_empty() {
            let check = check_blueprint(bp);
            for inv in check.invariants.iter().filter(|i| i.name == "r-bound") {
                println!("envelope block {}: {} ({})", inv.block, pass(inv.passed), inv.detail);
                ok &= inv.passed;
            }
        }
    }
    if let Some(text) = &a.b {
        let b = input::parse_b(text, a.d, a.maxdeg)?;
        let ledger = verify_p2_recurrence(&b, &r, &cert)?;
        println!("n,growth,weighted,convolution,step");
        for line in &ledger.lines {
            println!("{},{},{},{},{}", line.n, pass(line.growth), cell(line.weighted), cell(line.convolution), cell(line.step));
        }
        println!("min b_n/(d-v)^n = {}", format_rational(&ledger.min_ratio));
        ok &= ledger.passed();
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Check("growth-bound check failed".into()))
    }
}

fn tuple_text(entries: &[u32]) -> String {
    entries.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn jcount(a: &JcountArgs) -> Outcome {
    if a.q < 1 || a.n < 1 {
        return Err(Failure::Usage("need q >= 1 and n >= 1".into()));
    }
    let jc = count_j(a.q, a.n);
    println!("|J({},{})| = {}", a.q, a.n, jc.count);
    println!("(n+q-1)^(q-1) = {} within bound: {}", jc.bound, jc.within_bound);
    if a.list {
        for j in enumerate_j(a.q, a.n as usize, DEFAULT_ENUMERATION_CAP)? {
            println!("{}", tuple_text(j.entries()));
        }
    }
    if let Some(text) = &a.orbit {
        let j = WeakTuple::new(input::parse_tuple(text, "orbit")?, a.q)?;
        println!("orbit of ({}) has size {}", tuple_text(j.entries()), orbit_size(&j));
    }
    Ok(())
}

pub fn symfun(a: &SymfunArgs) -> Outcome {
    let field = input::field(&a.field)?;
    let window = monomial_window(a.d, a.c, DEFAULT_ENUMERATION_CAP)?;
    let j = WeakTuple::new(input::parse_tuple(&a.j, "j")?, window.q())?;
    for &i in j.entries() {
        println!("M_{i} = {}", window.get(i));
    }
    let s = order_symmetric(&j, field, DEFAULT_ENUMERATION_CAP)?;
    let h = h_generator(&j, &window, field, DEFAULT_ENUMERATION_CAP)?;
    println!("s_j = {}", s.to_string().replace('x', "y"));
    println!("h_j = {h}");
    Ok(())
}
