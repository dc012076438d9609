use std::ops::RangeInclusive;

use resolvitor::complexes::{
    betti_table, build_complex, check_product, compose_check, minimality_check, ComplexKind,
    FreeComplex, LocalLinearProfile,
};
use resolvitor::constructions::{assemble, Assembled, GradedMatrix, SequenceF};
use resolvitor::curve::{self, CurveParams};
use resolvitor::gradedla::{
    coker_hilbert, default_window, homology_dims, minor_span_check, minors,
    power_membership_search, regular_sequence_test, FieldChoice, HilbertFunction, HomologyReport,
    MinorSpan, QuotientPresentation,
};
use resolvitor::polyring::{parse_poly_list, Domain, Polynomial, Ring, VarSet};
use resolvitor::{Error, Result};
use serde_json::{json, Value};

use crate::args::{ComplexArgs, CurveArgs, GenArgs, MinorArgs, RegseqArgs, SeqArgs};
use crate::report::{Check, Report, Status};

fn ring(vars: &str, domain: Domain) -> Result<Ring> {
    Ok(Ring::new(VarSet::parse_list(vars)?, domain))
}

fn field(text: &str) -> Result<FieldChoice> {
    FieldChoice::parse(text).map_err(|e| match e {
        Error::Usage(m) => Error::Usage(format!("--field: {m}")),
        other => other,
    })
}

fn window(deg_max: Option<i64>, default: RangeInclusive<i64>) -> RangeInclusive<i64> {
    match deg_max {
        Some(n) => 0..=n,
        None => default,
    }
}

fn param(a: usize) -> Result<usize> {
    if a < 2 {
        return Err(Error::Usage(format!("--param must be at least 2, got {a}")));
    }
    Ok(a)
}

fn variables(r: &Ring) -> Result<String> {
    if r.nvars() < 4 {
        return Err(Error::Usage(
            "--f is required when fewer than four variables are declared".into(),
        ));
    }
    Ok(r.vars().names()[..4].join(","))
}

/// The sequence of a symbolic command: generic unless `--f` is given.
fn symbolic_sequence(args: &SeqArgs) -> Result<SequenceF> {
    match &args.f {
        Some(text) if !args.generic => SequenceF::parse(&ring(&args.vars, Domain::Rational)?, text),
        _ => Ok(SequenceF::generic()),
    }
}

fn sequence_params(report: &mut Report, seq: &SequenceF, a: usize) {
    report.param("a", a);
    report.param("generic", seq.is_generic());
    report.param("vars", seq.ring().vars().names().join(","));
    let f: Vec<String> = seq.elements().iter().map(ToString::to_string).collect();
    report.param("f", f.join(","));
}

fn render_matrix(m: &GradedMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str("  [ ");
        out.push_str(&line.join("  "));
        out.push_str(" ]\n");
    }
    out
}

pub fn gen_matrices(args: &GenArgs) -> Result<Report> {
    let a = param(args.seq.param)?;
    let seq = symbolic_sequence(&args.seq)?;
    let which: Vec<Assembled> = match &args.matrix {
        Some(label) => vec![Assembled::from_label(label).ok_or_else(|| {
            Error::Usage(format!(
                "--matrix: unknown matrix {label:?} (expected A, B, A', A'', B', B'', C or D)"
            ))
        })?],
        None => Assembled::ALL.to_vec(),
    };
    let mut report = Report::new("gen-matrices");
    sequence_params(&mut report, &seq, a);
    for w in which {
        let m = assemble(w, a, &seq)?;
        let (r, c) = m.shape();
        let graded = match (m.src_degrees(), m.tgt_degrees()) {
            (Some(s), Some(t)) => format!(", degrees {s:?} -> {t:?}"),
            _ => String::new(),
        };
        report.push(Check::new(
            w.label(),
            Status::Info,
            format!("{r}x{c}{graded}"),
            serde_json::to_value(m.to_json()).expect("matrix serializes"),
        ));
        report.block(&format!("{} ({r}x{c})", w.label()), render_matrix(&m));
    }
    Ok(report)
}

fn product_check(
    left: Assembled,
    right: Assembled,
    a: usize,
    seq: &SequenceF,
) -> Result<(String, resolvitor::complexes::ProductVerdict)> {
    let l = assemble(left, a, seq)?;
    let r = assemble(right, a, seq)?;
    let v = check_product(left.label(), &l, right.label(), &r)?;
    Ok((format!("{}*{}", left.label(), right.label()), v))
}

fn verdict_summary(v: &resolvitor::complexes::ProductVerdict) -> String {
    let (r, c) = v.shape;
    match &v.first_nonzero {
        None => format!("zero ({r}x{c})"),
        Some((i, j, e)) => format!("nonzero ({r}x{c}); entry ({i},{j}) = {e}"),
    }
}

pub fn check_annihilation(args: &SeqArgs) -> Result<Report> {
    use Assembled::*;
    let a = param(args.param)?;
    let seq = symbolic_sequence(args)?;
    let mut report = Report::new("check-annihilation");
    sequence_params(&mut report, &seq, a);
    let pairs = [
        (A, B),
        (C, A),
        (B, D),
        (C, APrime),
        (C, ADblPrime),
        (BPrime, D),
        (BDblPrime, D),
    ];
    for (l, r) in pairs {
        let (name, v) = product_check(l, r, a, &seq)?;
        report.push(Check::verdict(
            &name,
            v.zero,
            verdict_summary(&v),
            serde_json::to_value(&v).expect("verdict serializes"),
        ));
    }
    // A*B = A'*B'' + A''*B' vanishes as a whole; the single product A'*B' does not.
    let (name, v) = product_check(APrime, BPrime, a, &seq)?;
    report.push(Check::new(
        &name,
        Status::Info,
        format!(
            "{}; only the sum A'*B'' + A''*B' = A*B is zero",
            verdict_summary(&v)
        ),
        serde_json::to_value(&v).expect("verdict serializes"),
    ));
    Ok(report)
}

fn homology_checks(report: &mut Report, h: &HomologyReport, interior_expected: bool) {
    let w = h.window;
    let rows = |pred: &dyn Fn(usize) -> bool| -> Vec<Value> {
        h.failures()
            .into_iter()
            .filter(|r| pred(r.position))
            .map(|r| json!({"position": r.position, "degree": r.degree, "homology": r.homology}))
            .collect()
    };
    let interior = rows(&|p| p < h.length);
    let interior_summary = if interior.is_empty() {
        "zero".to_string()
    } else {
        let list: Vec<String> = interior
            .iter()
            .map(|v| format!("H_{}[{}] = {}", v["position"], v["degree"], v["homology"]))
            .collect();
        format!("nonzero: {}", list.join(", "))
    };
    let details = json!({"field": h.field, "quotient": h.quotient, "nonzero": interior});
    let check = if interior_expected {
        Check::verdict(
            "interior homology",
            h.interior_exact(),
            interior_summary,
            details,
        )
    } else {
        Check::new("interior homology", Status::Info, interior_summary, details)
    };
    report.push(check.on(w));
    let left = rows(&|p| p == h.length);
    let summary = if left.is_empty() {
        "leftmost map injective".to_string()
    } else {
        format!(
            "kernel of the leftmost map is nonzero in {} degrees",
            left.len()
        )
    };
    report.push(
        Check::verdict(
            "left injectivity",
            h.left_injective(),
            summary,
            json!({"field": h.field, "nonzero": left}),
        )
        .on(w),
    );
}

fn composition_check(report: &mut Report, x: &FreeComplex) {
    let comp = compose_check(x);
    let names: Vec<String> = comp
        .products
        .iter()
        .map(|p| format!("{}*{}", p.left, p.right))
        .collect();
    let summary = if comp.all_zero() {
        format!("{} = 0", names.join(", "))
    } else {
        let bad: Vec<String> = comp
            .products
            .iter()
            .filter(|p| !p.zero)
            .map(|p| format!("{}*{}", p.left, p.right))
            .collect();
        format!("nonzero: {}", bad.join(", "))
    };
    report.push(Check::verdict(
        "composition",
        comp.all_zero(),
        summary,
        serde_json::to_value(&comp).expect("composition serializes"),
    ));
}

fn minimality_info(report: &mut Report, x: &FreeComplex, status_if_false: Status) {
    let minimal = minimality_check(x);
    let status = if minimal {
        Status::Pass
    } else {
        status_if_false
    };
    let summary = if minimal {
        "no unit entries"
    } else {
        "some entry has a nonzero constant term"
    };
    report.push(Check::new(
        "minimality",
        status,
        summary,
        json!({"minimal": minimal}),
    ));
}

fn hypothesis_note(kind: ComplexKind, seq: &SequenceF) -> (String, Value) {
    let prod = |i: usize, j: usize| seq.f(i) * seq.f(j);
    let q = &prod(0, 3) - &prod(1, 2);
    let block = &prod(0, 2) - &prod(1, 3);
    let f1f3 = prod(0, 2);
    match kind {
        ComplexKind::C1 | ComplexKind::C2 => (
            "exact iff grade(f) >= 2 and f1*f3 - f2*f4 (the 2x2 block determinant of A11 over A21) is a nonzerodivisor; grade is not decided here".into(),
            json!({"f1*f4-f2*f3": q.to_string(), "f1*f3-f2*f4": block.to_string()}),
        ),
        ComplexKind::D1 | ComplexKind::D2 => (
            "exact iff f1*f3 is a nonzerodivisor; not decided here".into(),
            json!({"f1*f3": f1f3.to_string()}),
        ),
        ComplexKind::CFull => (
            "exact iff f is a regular sequence".into(),
            json!({}),
        ),
    }
}

fn image_dims(
    m: &GradedMatrix,
    window: RangeInclusive<i64>,
    fc: FieldChoice,
    q: Option<&QuotientPresentation>,
) -> Result<Vec<usize>> {
    let tgt = m.tgt_degrees().expect("graded").to_vec();
    let zero = GradedMatrix::zeros(m.ring(), 1, m.cols()).with_grading(vec![tgt[0]], tgt)?;
    let full = coker_hilbert(&zero, window.clone(), fc, q)?;
    let coker = coker_hilbert(m, window.clone(), fc, q)?;
    Ok(window.map(|t| full.get(t) - coker.get(t)).collect())
}

pub fn check_complex(args: &ComplexArgs) -> Result<Report> {
    let a = param(args.param)?;
    let kind = ComplexKind::from_label(&args.complex).ok_or_else(|| {
        Error::Usage(format!(
            "--complex: unknown complex {:?} (expected C1, C2, D1, D2 or CFULL)",
            args.complex
        ))
    })?;
    let mut report = Report::new("check-complex");
    report.param("complex", kind.label());
    if args.generic {
        let seq = SequenceF::generic();
        sequence_params(&mut report, &seq, a);
        let x = build_complex(kind, a, &seq, 0)?;
        report.param("ranks", json!(x.ranks()));
        composition_check(&mut report, &x);
        minimality_info(&mut report, &x, Status::Info);
        return Ok(report);
    }
    let fc = field(args.field.as_deref().unwrap_or("fp:32003"))?;
    let r = ring(&args.vars, Domain::Rational)?;
    let text = match &args.f {
        Some(t) => t.clone(),
        None => variables(&r)?,
    };
    let seq = SequenceF::parse(&r, &text)?;
    if seq.delta().is_none() {
        return Err(Error::Usage(
            "--f: the four polynomials must be homogeneous of one positive degree".into(),
        ));
    }
    let q = args
        .quotient
        .as_deref()
        .map(|t| QuotientPresentation::parse(&r, t))
        .transpose()
        .map_err(|e| match e {
            Error::Usage(m) => Error::Usage(format!("--quotient: {m}")),
            other => other,
        })?;
    sequence_params(&mut report, &seq, a);
    report.param("field", fc.label());
    if let Some(t) = &args.quotient {
        report.param("quotient", t.as_str());
    }
    // anchor the rightmost module at degree 0
    let probe = build_complex(kind, a, &seq, 0)?;
    let degrees = probe
        .degrees()
        .expect("homogeneous sequence gives a graded complex");
    let low = degrees
        .last()
        .and_then(|d| d.iter().min().copied())
        .unwrap_or(0);
    let x = build_complex(kind, a, &seq, -low)?;
    let degrees = x.degrees().expect("graded");
    let win = window(args.deg_max, default_window(&x, a));
    report.param("window", json!([win.start(), win.end()]));
    report.param("ranks", json!(x.ranks()));
    report.param("degrees", json!(degrees));

    composition_check(&mut report, &x);
    minimality_info(&mut report, &x, Status::Info);
    let h = homology_dims(&x, win.clone(), fc, q.as_ref())?;
    let dual_kind = matches!(kind, ComplexKind::C2 | ComplexKind::D2);
    homology_checks(&mut report, &h, !dual_kind);

    let (note, details) = hypothesis_note(kind, &seq);
    report.push(Check::new("hypothesis", Status::Info, note, details));
    if kind == ComplexKind::CFull {
        let rs = regular_sequence_test(seq.elements(), q.as_ref(), fc, args.deg_max)?;
        let summary = match (&rs.reason, rs.regular) {
            (Some(reason), _) => reason.clone(),
            (None, true) if rs.complete => "Hilbert series test passes".to_string(),
            (None, true) => "Hilbert series test passes up to the degree cap".to_string(),
            (None, false) => "Hilbert series test fails".to_string(),
        };
        report.push(Check::new(
            "regular sequence",
            Status::Info,
            summary,
            serde_json::to_value(&rs).expect("report serializes"),
        ));
    }
    if dual_kind {
        let h1: Vec<usize> = win
            .clone()
            .map(|t| {
                h.rows
                    .iter()
                    .find(|r| r.position == 1 && r.degree == t)
                    .map_or(0, |r| r.homology)
            })
            .collect();
        let mid = &degrees[1];
        let mut table = json!({"degrees": win.clone().collect::<Vec<_>>(), "H1": h1});
        for w in [Assembled::BPrime, Assembled::BDblPrime] {
            let m = assemble(w, a, &seq)?;
            let shift = mid[0] - m.tgt_degrees().expect("graded")[0];
            let m = m.shifted(shift);
            let key = format!("im {}", w.label());
            if m.tgt_degrees() == Some(mid.as_slice()) {
                table[key] = json!(image_dims(&m, win.clone(), fc, q.as_ref())?);
            } else {
                table[key] = Value::Null;
            }
        }
        let col = |key: &str, i: usize| match &table[key] {
            Value::Array(v) => v[i].to_string(),
            _ => "-".to_string(),
        };
        let mut text = format!("{:>4} {:>6} {:>6} {:>6}\n", "t", "H1", "im B'", "im B''");
        for (i, t) in win.clone().enumerate() {
            text.push_str(&format!(
                "{t:>4} {:>6} {:>6} {:>6}\n",
                col("H1", i),
                col("im B'", i),
                col("im B''", i)
            ));
        }
        report.block("H1 and images of B', B''", text);
        report.push(
            Check::new(
                "H1 and images of B', B''",
                Status::Info,
                "dimensions tabulated side by side",
                table,
            )
            .on((*win.start(), *win.end())),
        );
    }
    Ok(report)
}

pub fn check_minors(args: &MinorArgs) -> Result<Report> {
    let a = param(args.param)?;
    let fc = field(&args.field)?;
    let seq = SequenceF::generic();
    let mut report = Report::new("check-minors");
    sequence_params(&mut report, &seq, a);
    report.param("field", fc.label());
    let span = |w: Assembled, size: usize, kind: MinorSpan| -> Result<_> {
        minor_span_check(&assemble(w, a, &seq)?, size, kind)
    };
    let summary = |c: &resolvitor::gradedla::SpanCheck| {
        let head = format!(
            "{} minors of degree {}, span dimension {} (expected {})",
            c.minors,
            c.degree.map_or("-".to_string(), |d| d.to_string()),
            c.span_dim,
            c.expected_dim
        );
        if !c.holds && c.span_dim == c.expected_dim {
            format!("{head}, but not the predicted subspace")
        } else {
            head
        }
    };
    let to_value =
        |c: &resolvitor::gradedla::SpanCheck| serde_json::to_value(c).expect("serializes");
    let cases = [
        (
            "I_(a-1)(C) = (f)^(a-1)",
            Assembled::C,
            a - 1,
            MinorSpan::FullPower,
        ),
        (
            "I_(a-1)(D) = (f)^(a-1)",
            Assembled::D,
            a - 1,
            MinorSpan::FullPower,
        ),
        (
            "I_(a+1)(A') = (f)^(a-1)*(f1*f4-f2*f3)",
            Assembled::APrime,
            a + 1,
            MinorSpan::PowerTimesQ,
        ),
        (
            "I_(a+1)(A') = (f)^(a-1)*(f1*f3-f2*f4)",
            Assembled::APrime,
            a + 1,
            MinorSpan::PowerTimesBlockDeterminant,
        ),
        (
            "I_(a+1)(A'') vanishes on f1 = 0 and on f3 = 0",
            Assembled::ADblPrime,
            a + 1,
            MinorSpan::DivisibleByF1AndF3,
        ),
        (
            "I_(a+1)(B'') vanishes on f1 = 0 and on f3 = 0",
            Assembled::BDblPrime,
            a + 1,
            MinorSpan::DivisibleByF1AndF3,
        ),
    ];
    for (name, w, size, kind) in cases {
        let c = span(w, size, kind)?;
        report.push(Check::verdict(name, c.holds, summary(&c), to_value(&c)));
    }
    let gens = minors(&assemble(Assembled::ADblPrime, a, &seq)?, a + 1)?;
    let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let deg = gens
        .first()
        .and_then(Polynomial::homogeneous_degree)
        .unwrap_or(0);
    let range = power_range(deg, a as u32, args.deg_max);
    let target = seq.f(0) * seq.f(2);
    let search = power_membership_search(&target, &gens, range.clone(), fc)?;
    let summary = match search.found {
        Some(n) => format!("(f1*f3)^{n} lies in I_(a+1)(A'')"),
        None => format!(
            "(f1*f3)^N not in I_(a+1)(A'') for N = {}..{}",
            range.start(),
            range.end()
        ),
    };
    report.push(Check::new(
        "radical of I_(a+1)(A'') contains f1*f3",
        Status::Info,
        summary,
        serde_json::to_value(&search).expect("serializes"),
    ));
    Ok(report)
}

/// Exponents `N` with `2N` from the minor degree up to `a` steps beyond it.
fn power_range(deg: u32, a: u32, cap: Option<u32>) -> RangeInclusive<u32> {
    let lo = deg.div_ceil(2).max(1);
    let hi = cap.unwrap_or(lo + a);
    lo..=hi
}

pub fn check_regseq(args: &RegseqArgs) -> Result<Report> {
    let fc = field(&args.field.field)?;
    let r = ring(&args.vars, Domain::Rational)?;
    let f = parse_poly_list(&args.f, ',', &r)?;
    let q = args
        .quotient
        .as_deref()
        .map(|t| QuotientPresentation::parse(&r, t))
        .transpose()?;
    let mut report = Report::new("check-regseq");
    report.param("vars", r.vars().names().join(","));
    let shown: Vec<String> = f.iter().map(ToString::to_string).collect();
    report.param("f", shown.join(","));
    report.param("field", fc.label());
    if let Some(t) = &args.quotient {
        report.param("quotient", t.as_str());
    }
    let rs = regular_sequence_test(&f, q.as_ref(), fc, args.field.deg_max)?;
    let ambient = if q.is_some() { "A/I" } else { "A" };
    let last = rs.actual.len() as i64 - 1;
    let summary = match (&rs.reason, rs.regular) {
        (Some(reason), _) => reason.clone(),
        (None, true) if rs.complete => format!("regular on {ambient}; HF(R/fR) = {:?}", rs.actual),
        (None, true) => format!("consistent with regular on {ambient} up to degree {last}"),
        (None, false) => format!(
            "not regular on {ambient}: HF(R/fR) = {:?}, expected {:?}",
            rs.actual, rs.predicted
        ),
    };
    report.push(
        Check::verdict(
            "regular sequence",
            rs.regular,
            summary,
            serde_json::to_value(&rs).expect("serializes"),
        )
        .on((0, last)),
    );
    Ok(report)
}

struct CurveSetup {
    p: CurveParams,
    fc: FieldChoice,
    window: RangeInclusive<i64>,
}

fn curve_setup(report: &mut Report, args: &CurveArgs) -> Result<CurveSetup> {
    let p = CurveParams::new(args.a, args.b).map_err(|e| match e {
        Error::Usage(m) => Error::Usage(format!("--a/--b: {m}")),
        other => other,
    })?;
    let fc = field(&args.field.field)?;
    let window = window(args.field.deg_max, p.default_window());
    report.param("a", p.a());
    report.param("b", p.b());
    report.param("degree", p.degree());
    report.param("genus", p.genus());
    report.param("construction parameter", p.construction_param());
    report.param("field", fc.label());
    report.param("window", json!([window.start(), window.end()]));
    for w in p.warnings() {
        report.push(Check::new("warning", Status::Info, w, json!({})));
    }
    Ok(CurveSetup { p, fc, window })
}

fn span(w: &RangeInclusive<i64>) -> (i64, i64) {
    (*w.start(), *w.end())
}

fn shape_check(report: &mut Report, x: &FreeComplex, expected: &[Vec<i64>]) {
    let degrees = x.degrees().unwrap_or_default();
    let ok = degrees == expected;
    let ranks: Vec<usize> = expected.iter().map(Vec::len).collect();
    report.push(Check::verdict(
        "ranks and twists",
        ok,
        format!("ranks {:?}", x.ranks()),
        json!({"degrees": degrees, "expected degrees": expected, "expected ranks": ranks}),
    ));
}

fn construction_note(report: &mut Report, p: &CurveParams) {
    report.push(Check::new(
        "construction parameter",
        Status::Info,
        format!(
            "a - b = {} with f = (x3,x1,x0,x2); the value a - b + 1 does not fit the block sizes",
            p.construction_param()
        ),
        json!({"used": p.construction_param(), "alternative": p.construction_param() + 1}),
    ));
}

fn expected_profile(p: &CurveParams) -> LocalLinearProfile {
    LocalLinearProfile {
        d: p.b() as i64,
        e: p.a() as i64 - 2,
        s: 2,
        gap: p.gap(),
    }
}

fn gap_check(report: &mut Report, p: &CurveParams, profile: Option<LocalLinearProfile>) {
    let expected = expected_profile(p);
    if p.gap() > 0 {
        let summary = match profile {
            Some(g) => format!("gap = {} (d = {}, e = {}, s = {})", g.gap, g.d, g.e, g.s),
            None => "resolution is not locally linear".to_string(),
        };
        report.push(Check::verdict(
            "gap",
            profile == Some(expected),
            summary,
            json!({"found": profile, "expected": expected}),
        ));
    } else {
        report.push(Check::new(
            "gap",
            Status::Info,
            "a - b = 2: the resolution is linear",
            json!({"found": profile}),
        ));
    }
    report.gap = profile;
}

fn hilbert_values(h: &HilbertFunction) -> Value {
    json!(h
        .values()
        .iter()
        .map(|(t, d)| json!([t, d]))
        .collect::<Vec<_>>())
}

pub fn curve_hr(args: &CurveArgs) -> Result<Report> {
    let mut report = Report::new("curve-hr");
    let CurveSetup { p, fc, window } = curve_setup(&mut report, args)?;
    let x = curve::hr_complex(&p)?;
    shape_check(&mut report, &x, &curve::hr_expected_degrees(&p));
    composition_check(&mut report, &x);
    minimality_info(&mut report, &x, Status::Fail);
    let h = curve::exactness(&x, window.clone(), fc)?;
    homology_checks(&mut report, &h, true);

    let hh = curve::hr_hilbert(&p, window.clone(), fc)?;
    report.push(
        Check::verdict(
            "Hilbert function",
            hh.matches,
            format!("(j-b+1)(a-j-1) {}", if hh.matches { "holds" } else { "fails" }),
            json!({"computed": hilbert_values(&hh.computed), "closed form": hilbert_values(&hh.closed_form)}),
        )
        .on(hh.window),
    );
    report.push(Check::verdict(
        "length",
        hh.total == hh.expected_total,
        format!(
            "total {} (expected C(a-b+1,3) = {})",
            hh.total, hh.expected_total
        ),
        json!({"total": hh.total, "expected": hh.expected_total}),
    ));
    report.push(
        Check::verdict(
            "support",
            hh.zero_outside,
            format!("zero outside degrees {}..{}", p.b(), p.a() as i64 - 2),
            json!({"support": hh.computed.support()}),
        )
        .on(hh.window),
    );

    let dual = curve::hr_duality_checks(&p, &hh.computed)?;
    let centre = (p.a() + p.b()) as i64 - 2;
    report.push(Check::verdict(
        "Hilbert symmetry",
        dual.hf_symmetric,
        format!("HF(j) = HF({centre} - j)"),
        json!({"reflection": centre}),
    ));
    report.push(Check::verdict(
        "Betti palindromy",
        dual.betti_palindromic,
        format!("beta(i,j) = beta(4-i,{}-j)", p.a() + p.b() + 2),
        json!({}),
    ));
    let found: Vec<String> = dual
        .equivalences
        .iter()
        .filter(|e| e.found)
        .map(|e| format!("{} ~ {}", e.map, e.dual))
        .collect();
    report.push(Check::verdict(
        "self-duality",
        dual.equivalences.iter().all(|e| e.found),
        format!("signed permutations: {}", found.join(", ")),
        serde_json::to_value(&dual.equivalences).expect("serializes"),
    ));

    let (betti, profile) = curve::hr_gap(&p)?;
    report.push(Check::new(
        "regularity",
        Status::Info,
        format!("{}", curve::regularity_readoff(&x)?),
        json!({}),
    ));
    gap_check(&mut report, &p, profile);

    let sg = curve::hr_semigroup_crosscheck(&p, window.clone(), fc)?;
    let agree = sg
        .iter()
        .all(|r| r.resolution == r.semigroup && r.coordinate_ring_agrees);
    report.push(
        Check::verdict(
            "semigroup cross-check",
            agree,
            if agree {
                "(R_x0 ∩ R_x3)/R agrees with the resolution in every degree"
            } else {
                "disagreement with the resolution"
            },
            serde_json::to_value(&sg).expect("serializes"),
        )
        .on(span(&window)),
    );
    let top = (p.a() + 2) as i64;
    let sat_window = *window.start()..=top.min(*window.end());
    if !sat_window.is_empty() {
        let sat = curve::hr_saturation_crosscheck(&p, sat_window.clone(), fc)?;
        let zero = sat.iter().all(|r| r.saturation == 0);
        report.push(
            Check::new(
                "saturation cross-check",
                Status::Info,
                if zero {
                    "dim (I_C^sat/I_C)_t is 0 throughout: I_C is saturated, so this measures H^0, not HR(C)"
                        .to_string()
                } else {
                    "dim (I_C^sat/I_C)_t tabulated against the resolution".to_string()
                },
                serde_json::to_value(&sat).expect("serializes"),
            )
            .on(span(&sat_window)),
        );
    }
    construction_note(&mut report, &p);
    report.set_betti(&betti);
    report.hilbert = Some((&hh.computed).into());
    Ok(report)
}

pub fn curve_resolution(args: &CurveArgs) -> Result<Report> {
    let mut report = Report::new("curve-resolution");
    let CurveSetup { p, fc, window } = curve_setup(&mut report, args)?;
    let rel = curve::verify_relations(&p)?;
    report.push(Check::verdict(
        "relations",
        rel.iter().all(|r| r.holds),
        format!("{} relations checked symbolically", rel.len()),
        serde_json::to_value(&rel).expect("serializes"),
    ));
    let x = curve::m_resolution(&p)?;
    shape_check(&mut report, &x, &curve::m_expected_degrees(&p));
    composition_check(&mut report, &x);
    minimality_info(&mut report, &x, Status::Fail);
    let h = curve::exactness(&x, window.clone(), fc)?;
    homology_checks(&mut report, &h, true);
    let rows = curve::m_presentation_check(&p, window.clone(), fc)?;
    let bad: Vec<i64> = rows
        .iter()
        .filter(|r| !r.holds())
        .map(|r| r.degree)
        .collect();
    report.push(
        Check::verdict(
            "presentation",
            bad.is_empty(),
            if bad.is_empty() {
                "coker A' = I_C/(Q) in every degree".to_string()
            } else {
                format!("mismatch in degrees {bad:?}")
            },
            serde_json::to_value(&rows).expect("serializes"),
        )
        .on(span(&window)),
    );
    report.push(Check::new(
        "regularity",
        Status::Info,
        format!("{}", curve::regularity_readoff(&x)?),
        json!({}),
    ));
    construction_note(&mut report, &p);
    report.set_betti(&betti_table(&x)?);
    Ok(report)
}

pub fn curve_gap(args: &CurveArgs) -> Result<Report> {
    let mut report = Report::new("curve-gap");
    let CurveSetup { p, .. } = curve_setup(&mut report, args)?;
    let (betti, profile) = curve::hr_gap(&p)?;
    let expected: Vec<usize> = curve::hr_expected_degrees(&p)
        .iter()
        .map(Vec::len)
        .collect();
    let totals: Vec<usize> = (0..expected.len()).map(|i| betti.total(i)).collect();
    report.push(Check::verdict(
        "Betti totals",
        totals == expected,
        format!("{totals:?}"),
        json!({"totals": totals, "expected": expected}),
    ));
    gap_check(&mut report, &p, profile);
    report.set_betti(&betti);
    Ok(report)
}

pub fn curve_omega(args: &CurveArgs) -> Result<Report> {
    let mut report = Report::new("curve-omega");
    let CurveSetup { p, fc, window } = curve_setup(&mut report, args)?;
    let d = curve::omega_diagnostics(&p, window.clone(), fc)?;
    report.push(Check::verdict(
        "C*A'' = 0",
        d.composition_zero,
        format!("at parameter {}", d.param),
        json!({"parameter": d.param}),
    ));
    for audit in &d.audit {
        let summary = match audit.entry_degree {
            Some(e) if audit.consistent => format!("entry degree {e} matches the twist gap"),
            Some(e) => format!(
                "printed twist gap {} but entries have degree {e}",
                audit.printed_gap
            ),
            None => "no nonzero entries".to_string(),
        };
        report.push(Check::new(
            &format!("twist audit {}", audit.map),
            Status::Info,
            summary,
            serde_json::to_value(audit).expect("serializes"),
        ));
    }
    let agree = |x: &HilbertFunction| window.clone().all(|t| x.get(t) == d.m_shifted.get(t));
    report.push(
        Check::new(
            "HF(M(2)) against candidate cokernels",
            Status::Info,
            format!(
                "coker A'' {} M(2); coker A' {} M(2)",
                if agree(&d.coker_a_dbl_prime) {
                    "matches"
                } else {
                    "differs from"
                },
                if agree(&d.coker_a_prime) {
                    "matches"
                } else {
                    "differs from"
                },
            ),
            json!({
                "M(2)": hilbert_values(&d.m_shifted),
                "coker A''": hilbert_values(&d.coker_a_dbl_prime),
                "coker A'": hilbert_values(&d.coker_a_prime),
            }),
        )
        .on(span(&window)),
    );
    construction_note(&mut report, &p);
    Ok(report)
}
