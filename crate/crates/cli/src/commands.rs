use crate::output::{csv_table, emit, Format};
use crate::{
    BoundsSweepArgs, CensusArgs, CountArgs, DistributionArgs, Global, RegimeArgs,
    SieveSelftestArgs, VerifyArgs, WeilSweepArgs,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rsdl_core::chars::{
    l_function, m_k_bound, m_k_sum_from_census, monic_residue_census, weil_check, CharacterGroup,
    ResidueRing,
};
use rsdl_core::code::{
    deep_hole_census, degree_bounds, distance_distribution, RSCode, Word, WordClass,
};
use rsdl_core::counts::{excess_degree, root_histogram};
use rsdl_core::error::{Error, Result};
use rsdl_core::field::{Field, FiniteField};
use rsdl_core::formulas::{
    bound_holds, count_error_bound, count_main_term, regime_report, verify_bound, RegimeParams,
};
use rsdl_core::suites;
use rsdl_core::Poly;

fn require_field(g: &Global) -> Result<Field> {
    match g.field_spec() {
        Some(spec) => FiniteField::parse_spec(spec),
        None => Err(Error::Parse(
            "this command needs --field (e.g. --field q=5)".into(),
        )),
    }
}

fn emit_or_fail(g: &Global, content: &str) -> Result<()> {
    emit(g.out(), content).map_err(|e| Error::Parse(format!("cannot write output: {e}")))
}

pub fn count(g: &Global, args: &CountArgs) -> Result<i32> {
    let field = require_field(g)?;
    let q = field.q();
    let f = Poly::parse(&args.f, &field)?;
    if args.k == 0 {
        return Err(Error::Range("k must be at least 1".into()));
    }
    let hist = root_histogram(&f, args.k, g.budget())?;
    let m = excess_degree(&f, args.k);
    let rs: Vec<usize> = match (args.r, args.all_r) {
        (Some(r), _) => {
            if r > q as usize {
                return Err(Error::Range(format!("r = {r} exceeds q = {q}")));
            }
            vec![r]
        }
        // rows for every attainable r: 0..=deg(f) in the generic case, the
        // MacWilliams range plus the zero-polynomial slot for codewords
        (None, true) => match m {
            Some(m) => (0..=args.k + m).collect(),
            None => (0..args.k).chain([q as usize]).collect(),
        },
        (None, false) => {
            return Err(Error::Parse("give either --r or --all-r".into()));
        }
    };
    let digits = g.digits();
    let mut header = vec!["q", "k", "m", "f", "r", "count"];
    if args.check_formula {
        header.extend_from_slice(&["main", "bound", "holds", "gap"]);
    }
    let mut rows = vec![];
    for &r in &rs {
        let mut row = vec![
            q.to_string(),
            args.k.to_string(),
            m.map(|m| m.to_string()).unwrap_or_else(|| "codeword".into()),
            f.compact_string(),
            r.to_string(),
            hist[r].to_string(),
        ];
        if args.check_formula {
            let rep = verify_bound(&f, args.k, r, g.budget(), digits)?;
            let gap = {
                let main: BigRational = rep
                    .main_term
                    .parse::<BigRational>()
                    .unwrap_or_else(|_| parse_fraction(&rep.main_term));
                let oracle = BigRational::from_integer(BigInt::from(hist[r]));
                rsdl_core::binom::exact_string(&num_traits::Signed::abs(&(oracle - main)))
            };
            row.push(rep.main_term.clone());
            row.push(rep.error_bound.clone());
            row.push(rep.holds.map(|h| h.to_string()).unwrap_or_default());
            row.push(gap);
        }
        rows.push(row);
    }
    match g.format().unwrap_or(Format::Csv) {
        Format::Csv => emit_or_fail(g, &csv_table(&header, &rows))?,
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut map = serde_json::Map::new();
                    for (h, v) in header.iter().zip(row.iter()) {
                        map.insert(h.to_string(), serde_json::Value::String(v.clone()));
                    }
                    serde_json::Value::Object(map)
                })
                .collect();
            emit_or_fail(g, &format!("{}\n", serde_json::to_string_pretty(&objs).unwrap()))?;
        }
    }
    Ok(0)
}

fn parse_fraction(s: &str) -> BigRational {
    if let Some((n, d)) = s.split_once('/') {
        BigRational::new(n.parse().unwrap(), d.parse().unwrap())
    } else {
        BigRational::from_integer(s.parse().unwrap())
    }
}

pub fn distribution(g: &Global, args: &DistributionArgs) -> Result<i32> {
    let field = require_field(g)?;
    let code = if args.primitive {
        RSCode::primitive(&field, args.k)?
    } else {
        RSCode::standard(&field, args.k)?
    };
    let word = match (&args.word, &args.poly) {
        (Some(values), _) => {
            let parsed: std::result::Result<Vec<u64>, _> =
                values.split(',').map(|v| v.trim().parse::<u64>()).collect();
            let parsed =
                parsed.map_err(|_| Error::Parse(format!("bad word value list `{values}`")))?;
            Word::from_indices(&code, &parsed)?
        }
        (None, Some(poly)) => Word::from_poly(&code, &Poly::parse(poly, &field)?),
        (None, None) => return Err(Error::Parse("give either --word or --poly".into())),
    };
    let dist = distance_distribution(&word, &code, g.budget())?;
    let degree = word.degree();
    let (bounds, class): (Option<(usize, usize)>, Option<WordClass>) =
        match degree_bounds(&word, &code) {
            Err(Error::IsCodeword) => (None, None),
            Err(e) => return Err(e),
            Ok(b) => {
                let d = dist.min_distance().unwrap_or(0);
                let class = match (d == b.0, d == b.1) {
                    (true, true) => WordClass::Both,
                    (true, false) => WordClass::Ordinary,
                    (false, true) => WordClass::DeepHole,
                    (false, false) => WordClass::Neither,
                };
                (Some(b), Some(class))
            }
        };
    let summary = serde_json::json!({
        "q": field.q(),
        "n": code.n(),
        "k": code.k(),
        "word": word.value_indices(),
        "degree": degree,
        "error_distance": dist.min_distance(),
        "lower_bound": bounds.map(|b| b.0),
        "upper_bound": bounds.map(|b| b.1),
        "class": class,
        "counts": dist.counts,
        "total": dist.total(),
    });
    match g.format().unwrap_or(Format::Json) {
        Format::Json => emit_or_fail(g, &format!("{}\n", serde_json::to_string_pretty(&summary).unwrap()))?,
        Format::Csv => {
            let header = vec!["q", "n", "k", "word", "i", "count"];
            let word_str = word
                .value_indices()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let rows: Vec<Vec<String>> = dist
                .counts
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    vec![
                        field.q().to_string(),
                        code.n().to_string(),
                        code.k().to_string(),
                        word_str.clone(),
                        i.to_string(),
                        c.to_string(),
                    ]
                })
                .collect();
            emit_or_fail(g, &csv_table(&header, &rows))?;
        }
    }
    Ok(0)
}

pub fn census(g: &Global, args: &CensusArgs) -> Result<i32> {
    let field = require_field(g)?;
    let code = if args.primitive {
        RSCode::primitive(&field, args.k)?
    } else {
        RSCode::standard(&field, args.k)?
    };
    let report = deep_hole_census(&code, g.budget())?;
    eprintln!(
        "census q={} n={} k={}: {} deep holes, {} of degree k, all-degree-k={}, odd characteristic={}",
        report.q,
        report.n,
        report.k,
        report.deep_hole_count,
        report.degree_k_count,
        report.all_deep_holes_have_degree_k,
        report.odd_characteristic
    );
    let body = serde_json::to_string_pretty(&report.deep_holes).unwrap();
    emit_or_fail(g, &format!("{body}\n"))?;
    Ok(0)
}

pub fn bounds_sweep(g: &Global, args: &BoundsSweepArgs) -> Result<i32> {
    for &q in &args.q {
        FiniteField::with_q(q)?;
    }
    let digits = g.digits();
    let budget = g.budget();
    let instances = suites::count_instances(&args.q, args.count, g.seed(), 1_000_000);
    let header = vec![
        "q", "p", "k", "m", "r", "f", "main", "bound", "oracle", "holds", "gap",
    ];
    let reports: Vec<Vec<Vec<String>>> =
        rsdl_core::exec::map_collect(instances, |inst| {
            let (field, f) = inst.build();
            let hist = root_histogram(&f, inst.k, budget).expect("instances fit the budget");
            let mut rows = vec![];
            for r in 0..=(inst.k + inst.m) {
                let main = count_main_term(inst.q, inst.k, inst.m, r);
                let bound = count_error_bound(inst.q, field.p(), inst.k, inst.m, r);
                let holds = bound_holds(hist[r], &main, &bound);
                let gap = num_traits::Signed::abs(
                    &(BigRational::from_integer(BigInt::from(hist[r])) - &main),
                );
                rows.push(vec![
                    inst.q.to_string(),
                    field.p().to_string(),
                    inst.k.to_string(),
                    inst.m.to_string(),
                    r.to_string(),
                    f.compact_string(),
                    rsdl_core::binom::exact_string(&main),
                    format!("~{}", bound.decimal_up(digits)),
                    hist[r].to_string(),
                    holds.to_string(),
                    rsdl_core::binom::exact_string(&gap),
                ]);
            }
            rows
        });
    let rows: Vec<Vec<String>> = reports.into_iter().flatten().collect();
    let any_failure = rows.iter().any(|r| r[9] == "false");
    match g.format().unwrap_or(Format::Csv) {
        Format::Csv => emit_or_fail(g, &csv_table(&header, &rows))?,
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut map = serde_json::Map::new();
                    for (h, v) in header.iter().zip(row.iter()) {
                        map.insert(h.to_string(), serde_json::Value::String(v.clone()));
                    }
                    serde_json::Value::Object(map)
                })
                .collect();
            emit_or_fail(g, &format!("{}\n", serde_json::to_string_pretty(&objs).unwrap()))?;
        }
    }
    Ok(if any_failure { 1 } else { 0 })
}

pub fn verify(g: &Global, args: &VerifyArgs) -> Result<i32> {
    let budget = g.budget();
    let seed = g.seed();
    let report = match args.suite.as_str() {
        "formulas" => {
            let qs = args.q.clone().unwrap_or_else(|| suites::FORMULA_QS.to_vec());
            suites::formulas_suite(&qs, args.kmax, budget)?
        }
        "bounds" => {
            let qs = args.q.clone().unwrap_or_else(|| suites::BOUND_QS.to_vec());
            suites::bounds_suite(&qs, args.count.unwrap_or(1000), seed, budget)?
        }
        "sieve" => suites::sieve_suite(
            args.k.unwrap_or(6),
            7,
            args.trials.or(args.count).unwrap_or(50),
            seed,
        )?,
        "weil" => {
            let qs = args.q.clone().unwrap_or_else(|| suites::CHAR_QS.to_vec());
            suites::weil_suite(&qs, args.m.unwrap_or(2), 1e-8, budget)?
        }
        "n2" => {
            let qs = args.q.clone().unwrap_or_else(|| suites::BOUND_QS.to_vec());
            suites::n2_suite(&qs, args.count.unwrap_or(200), seed, budget)?
        }
        "metrics" => suites::metrics_suite(&[(3, 1), (4, 1), (4, 2), (5, 2)], budget.max(100_000_000))?,
        other => {
            return Err(Error::Parse(format!(
                "unknown suite `{other}` (expected formulas, bounds, sieve, weil, n2, or metrics)"
            )))
        }
    };
    emit_or_fail(g, &format!("{}\n", report.to_json()))?;
    if report.all_passed() {
        Ok(0)
    } else {
        for failure in report.failures() {
            eprintln!("FAIL {} :: {}", failure.params, failure.detail);
        }
        Ok(1)
    }
}

pub fn weil_sweep(g: &Global, args: &WeilSweepArgs) -> Result<i32> {
    let field = require_field(g)?;
    let ring = match (&args.m, &args.modulus) {
        (Some(m), None) => ResidueRing::x_power(&field, *m),
        (None, Some(text)) => ResidueRing::new(&field, Poly::parse(text, &field)?)?,
        (None, None) => {
            return Err(Error::Parse("give either --m or --modulus".into()));
        }
        (Some(_), Some(_)) => unreachable!("clap forbids this"),
    };
    let budget = g.budget();
    let n = ring.degree();
    let q = field.q();
    let group = CharacterGroup::new(&ring, budget)?;
    let mut censuses = vec![];
    for k in 0..=(n + 2) {
        censuses.push(monic_residue_census(&ring, k, budget)?);
    }
    let chars = group.characters();
    let header = vec![
        "q", "modulus", "char", "char_order", "k", "m_k_abs", "bound", "pass", "weil_roots_pass",
    ];
    let mut rows = vec![];
    let mut all_pass = true;
    for (idx, chi) in chars.iter().enumerate() {
        if chi.is_trivial() {
            continue;
        }
        let weil_pass = {
            let l = l_function(chi, budget)?;
            weil_check(&l, args.tolerance)?.pass
        };
        for (k, census) in censuses.iter().enumerate() {
            let mk = m_k_sum_from_census(chi, census);
            let mag = group.cyc_ctx().embed(&mk).norm();
            let bound = if k < n { m_k_bound(n, k, q) } else { 0.0 };
            let pass = mag <= bound * (1.0 + args.tolerance) + args.tolerance;
            all_pass &= pass && weil_pass;
            rows.push(vec![
                q.to_string(),
                ring.modulus().compact_string(),
                idx.to_string(),
                chi.order().to_string(),
                k.to_string(),
                format!("{mag:.12e}"),
                format!("{bound:.12e}"),
                pass.to_string(),
                weil_pass.to_string(),
            ]);
        }
    }
    emit_or_fail(g, &csv_table(&header, &rows))?;
    Ok(if all_pass { 0 } else { 1 })
}

pub fn sieve_selftest(g: &Global, args: &SieveSelftestArgs) -> Result<i32> {
    let report = suites::sieve_suite(args.k, args.omega, args.trials, g.seed())?;
    let mut out = String::new();
    out.push_str("trial,params,pass,detail\n");
    for (i, case) in report.cases.iter().enumerate() {
        out.push_str(&format!(
            "{i},\"{}\",{},\"{}\"\n",
            case.params, case.pass, case.detail
        ));
    }
    // expansion sizes: permutation form versus class form
    out.push_str("k,permutation_terms,class_terms\n");
    for k in 1..=args.k {
        out.push_str(&format!(
            "{k},{},{}\n",
            rsdl_core::sieve::permutations(k).len(),
            rsdl_core::sieve::CycleType::all(k).len()
        ));
    }
    emit_or_fail(g, &out)?;
    if report.all_passed() {
        Ok(0)
    } else {
        for failure in report.failures() {
            eprintln!("FAIL {} :: {}", failure.params, failure.detail);
        }
        Ok(1)
    }
}

fn parse_decimal(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("bad decimal `{t}`"));
    if let Some((int, frac)) = t.split_once('.') {
        let int: BigInt = if int.is_empty() {
            BigInt::from(0)
        } else {
            int.parse().map_err(|_| bad())?
        };
        let digits = frac.len() as u32;
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let den = BigInt::from(10).pow(digits);
        Ok(BigRational::new(int * &den + frac, den))
    } else if let Some((n, d)) = t.split_once('/') {
        Ok(BigRational::new(
            n.parse().map_err(|_| bad())?,
            d.parse().map_err(|_| bad())?,
        ))
    } else {
        Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
    }
}

pub fn regime(g: &Global, args: &RegimeArgs) -> Result<i32> {
    if args.primes.is_empty() {
        return Err(Error::Range("give at least one prime".into()));
    }
    let params = RegimeParams::new(
        parse_decimal(&args.c)?,
        parse_decimal(&args.delta)?,
        parse_decimal(&args.lambda)?,
    )?;
    let rows = regime_report(&params, &args.primes, g.digits())?;
    match g.format().unwrap_or(Format::Csv) {
        Format::Json => {
            emit_or_fail(g, &format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()))?
        }
        Format::Csv => {
            let header = vec![
                "p",
                "k",
                "m",
                "r",
                "main",
                "bound",
                "ratio",
                "e_increasing",
                "e_max_at",
            ];
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.k.to_string(),
                        r.m.to_string(),
                        r.r.to_string(),
                        r.main_term.clone(),
                        r.error_bound.clone(),
                        r.ratio.clone(),
                        r.e_increasing.to_string(),
                        r.e_max_at.to_string(),
                    ]
                })
                .collect();
            emit_or_fail(g, &csv_table(&header, &table))?;
        }
    }
    Ok(0)
}

pub fn fixtures_generate(g: &Global) -> Result<i32> {
    let records = rsdl_core::fixtures::generate(g.budget())?;
    emit_or_fail(
        g,
        &format!("{}\n", serde_json::to_string_pretty(&records).unwrap()),
    )?;
    Ok(0)
}
