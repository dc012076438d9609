//! The monomial curve `C ⊂ ℙ³` of degree `a + b` on the quadric
//! `Q = x0·x3 - x1·x2`, with ideal `I_C = (Q, F_0, …, F_{a-b})` where
//! `F_i = x0^{a-b-i}·x2^{b+i} - x1^{a-i}·x3^i`.
//!
//! The complexes below are the generic constructions specialized at
//! `f = (x3, x1, x0, x2)` with parameter `a - b`; that parameter is what
//! makes the blocks `(a-b) × (a-b+1)`.

use std::ops::RangeInclusive;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::complexes::{
    betti_table, build_complex, check_product, compose_check, dualize, locally_linear_classify,
    regularity, BettiTable, ComplexKind, FreeComplex, LocalLinearProfile,
};
use crate::constructions::{
    apply_sigma_for, assemble, signed_perm_equiv, Assembled, GradedMatrix, SequenceF,
};
use crate::error::{Error, Result};
use crate::gradedla::{
    coker_hilbert, expand_into_quotient, homology_dims, ideal_piece_dim, rank,
    saturation_piece_dim, with_field, FieldChoice, HilbertFunction, QuotientPresentation,
};
use crate::polyring::{Domain, Monomial, Polynomial, Ring};

pub const CURVE_VARS: [&str; 4] = ["x0", "x1", "x2", "x3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveParams {
    a: u32,
    b: u32,
}

impl CurveParams {
    /// Requires `0 < b ≤ a - 2` and `gcd(a, b) = 1`.
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if b == 0 {
            return Err(Error::usage("b must be positive"));
        }
        if b + 2 > a {
            return Err(Error::usage(format!(
                "b ≤ a - 2 fails for (a, b) = ({a}, {b})"
            )));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::usage(format!(
                "gcd(a, b) = 1 fails for (a, b) = ({a}, {b})"
            )));
        }
        Ok(CurveParams { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    pub fn genus(&self) -> u32 {
        (self.a - 1) * (self.b - 1)
    }

    /// Parameter of the generic constructions, `a - b`.
    pub fn construction_param(&self) -> usize {
        (self.a - self.b) as usize
    }

    pub fn gap(&self) -> i64 {
        self.a as i64 - self.b as i64 - 2
    }

    /// `a - b = 2`, below the standing hypothesis `a - b > 2`; `HR(C)` is
    /// then one-dimensional and its resolution is a Koszul complex.
    pub fn below_standing_hypothesis(&self) -> bool {
        self.a - self.b == 2
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.below_standing_hypothesis() {
            vec![format!(
                "a - b = 2 is below the standing hypothesis a - b > 2; HR(C) has length 1"
            )]
        } else {
            Vec::new()
        }
    }

    /// `[0, a + 6]`.
    pub fn default_window(&self) -> RangeInclusive<i64> {
        0..=self.a as i64 + 6
    }

    pub fn ring(&self) -> Ring {
        Ring::with_vars(&CURVE_VARS, Domain::Integer)
    }

    /// `f = (x3, x1, x0, x2)`.
    pub fn sequence(&self) -> SequenceF {
        SequenceF::parse(&self.ring(), "x3,x1,x0,x2").expect("fixed specialization")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveIdeal {
    pub q: Polynomial,
    pub f: Vec<Polynomial>,
}

impl CurveIdeal {
    /// `Q` followed by `F_0, …, F_{a-b}`.
    pub fn gens(&self) -> Vec<Polynomial> {
        std::iter::once(self.q.clone())
            .chain(self.f.iter().cloned())
            .collect()
    }
}

fn mono(r: &Ring, e: [u32; 4]) -> Polynomial {
    r.monomial(Monomial::from_exponents(e.to_vec()))
}

pub fn curve_ideal(p: &CurveParams) -> CurveIdeal {
    let r = p.ring();
    let (a, b) = (p.a, p.b);
    let q = &mono(&r, [1, 0, 0, 1]) - &mono(&r, [0, 1, 1, 0]);
    let f = (0..=a - b)
        .map(|i| &mono(&r, [a - b - i, 0, b + i, 0]) - &mono(&r, [0, a - i, 0, i]))
        .collect();
    CurveIdeal { q, f }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub i: u32,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// `x2·F_i - x0·F_{i+1} = x1^{a-i-1}·x3^i·Q` and
/// `x3·F_i - x1·F_{i+1} = x0^{a-b-i-1}·x2^{b+i}·Q` for `i < a - b`.
pub fn verify_relations(p: &CurveParams) -> Result<Vec<RelationCheck>> {
    let r = p.ring();
    let ideal = curve_ideal(p);
    let (a, b) = (p.a, p.b);
    let x = |i| r.var(i);
    let mut out = Vec::new();
    for i in 0..a - b {
        let fi = &ideal.f[i as usize];
        let fj = &ideal.f[i as usize + 1];
        let pairs = [
            (
                &(&x(2) * fi) - &(&x(0) * fj),
                &mono(&r, [0, a - i - 1, 0, i]) * &ideal.q,
                format!("x2*F_{i} - x0*F_{}", i + 1),
            ),
            (
                &(&x(3) * fi) - &(&x(1) * fj),
                &mono(&r, [a - b - i - 1, 0, b + i, 0]) * &ideal.q,
                format!("x3*F_{i} - x1*F_{}", i + 1),
            ),
        ];
        for (lhs, rhs, name) in pairs {
            let holds = lhs == rhs;
            if !holds {
                return Err(Error::integrity(format!(
                    "{name} = {lhs} differs from {rhs}"
                )));
            }
            out.push(RelationCheck {
                i,
                lhs: name,
                rhs: rhs.to_string(),
                holds,
            });
        }
    }
    Ok(out)
}

/// `0 → A^{a-b-1}(-a-2) → A^{2(a-b)}(-a-1) → A^{a-b+1}(-a)`.
pub fn m_resolution(p: &CurveParams) -> Result<FreeComplex> {
    build_complex(
        ComplexKind::C1,
        p.construction_param(),
        &p.sequence(),
        p.a as i64 + 2,
    )
}

/// The five-term resolution of `HR(C)`, generator degrees
/// `(a+2, a+1, {a, b+2}, b+1, b)` from left to right.
pub fn hr_complex(p: &CurveParams) -> Result<FreeComplex> {
    build_complex(
        ComplexKind::CFull,
        p.construction_param(),
        &p.sequence(),
        p.a as i64 + 2,
    )
}

/// Ranks and generator degrees expected for the `HR(C)` resolution.
pub fn hr_expected_degrees(p: &CurveParams) -> Vec<Vec<i64>> {
    let (a, b) = (p.a as i64, p.b as i64);
    let k = (a - b) as usize;
    vec![
        vec![a + 2; k - 1],
        vec![a + 1; 2 * k],
        [vec![a; k + 1], vec![b + 2; k + 1]].concat(),
        vec![b + 1; 2 * k],
        vec![b; k - 1],
    ]
}

pub fn m_expected_degrees(p: &CurveParams) -> Vec<Vec<i64>> {
    let a = p.a as i64;
    let k = p.construction_param();
    vec![vec![a + 2; k - 1], vec![a + 1; 2 * k], vec![a; k + 1]]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationRow {
    pub degree: i64,
    /// Rank of the presentation map `A^{a-b+1}(-a) → A/(Q)` in this degree.
    pub image: usize,
    /// `dim (I_C/(Q))_t = dim (I_C)_t - dim A_{t-2}`.
    pub ideal_quotient: usize,
    pub kernel: usize,
    /// Rank of `A'` in this degree.
    pub a_prime_image: usize,
    /// `A'` composed with the presentation vanishes modulo `Q`.
    pub composite_zero: bool,
}

impl PresentationRow {
    pub fn holds(&self) -> bool {
        self.image == self.ideal_quotient
            && self.kernel == self.a_prime_image
            && self.composite_zero
    }
}

fn binom(n: i64, k: i64) -> usize {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

/// `dim A_t` in four variables.
fn dim_a(t: i64) -> usize {
    binom(t + 3, 3)
}

/// Checks `M ≅ A^{a-b+1}(-a)/im A'` degree by degree.
pub fn m_presentation_check(
    p: &CurveParams,
    window: RangeInclusive<i64>,
    field: FieldChoice,
) -> Result<Vec<PresentationRow>> {
    let r = p.ring();
    let ideal = curve_ideal(p);
    let a = p.a as i64;
    let pres = GradedMatrix::from_rows(&r, ideal.f.iter().map(|f| vec![f.clone()]).collect())?
        .with_grading(vec![a; ideal.f.len()], vec![0])?;
    let a_prime = m_resolution(p)?.maps()[1].clone();
    let composite = a_prime.mul(&pres)?;
    let q = QuotientPresentation::new(vec![ideal.q.clone()])?;
    let gens = ideal.gens();
    let mut rows = Vec::new();
    for t in window {
        let (image, kernel, a_prime_image, composite_zero) = with_field!(field, f => {
            let s = expand_into_quotient(&pres, t, &f, &q)?;
            let image = rank(&f, &s);
            let ap = crate::gradedla::expand_graded_piece(&a_prime, t, &f, None)?;
            let comp = expand_into_quotient(&composite, t, &f, &q)?;
            (image, s.nrows() - image, rank(&f, &ap), rank(&f, &comp) == 0)
        });
        let ideal_quotient = ideal_piece_dim(&gens, t, field)? - dim_a(t - 2);
        rows.push(PresentationRow {
            degree: t,
            image,
            ideal_quotient,
            kernel,
            a_prime_image,
            composite_zero,
        });
    }
    Ok(rows)
}

/// `(j - b + 1)(a - j - 1)` on `[b, a - 2]`, zero elsewhere.
pub fn hr_closed_form(p: &CurveParams, j: i64) -> usize {
    let (a, b) = (p.a as i64, p.b as i64);
    if j < b || j > a - 2 {
        0
    } else {
        ((j - b + 1) * (a - j - 1)) as usize
    }
}

/// `C(a - b + 1, 3)`.
pub fn hr_length(p: &CurveParams) -> usize {
    binom((p.a - p.b) as i64 + 1, 3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HrHilbert {
    pub computed: HilbertFunction,
    pub closed_form: HilbertFunction,
    pub window: (i64, i64),
    pub matches: bool,
    pub total: usize,
    pub expected_total: usize,
    pub zero_outside: bool,
}

impl HrHilbert {
    pub fn all_hold(&self) -> bool {
        self.matches && self.total == self.expected_total && self.zero_outside
    }
}

/// Hilbert function of `HR(C) = Coker D` (with its twist `-b`).
pub fn hr_hilbert(
    p: &CurveParams,
    window: RangeInclusive<i64>,
    field: FieldChoice,
) -> Result<HrHilbert> {
    let x = hr_complex(p)?;
    let d = x.maps().last().expect("four maps");
    let computed = coker_hilbert(d, window.clone(), field, None)?;
    let closed_form =
        HilbertFunction::from_values(window.clone().map(|j| (j, hr_closed_form(p, j))));
    let (b, a) = (p.b as i64, p.a as i64);
    Ok(HrHilbert {
        matches: computed == closed_form,
        total: computed.total(),
        expected_total: hr_length(p),
        zero_outside: computed.support().iter().all(|&j| b <= j && j <= a - 2),
        window: (*window.start(), *window.end()),
        computed,
        closed_form,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEquivalence {
    pub map: String,
    pub dual: String,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub hf_symmetric: bool,
    pub betti_palindromic: bool,
    pub equivalences: Vec<MapEquivalence>,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.hf_symmetric && self.betti_palindromic && self.equivalences.iter().all(|e| e.found)
    }
}

/// HF symmetry `j ↔ a+b-2-j`, Betti palindromy `β_{i,j} = β_{4-i,a+b+2-j}`,
/// and self-duality of the maps up to signed permutations after the
/// sign-swap substitution.
pub fn hr_duality_checks(p: &CurveParams, hf: &HilbertFunction) -> Result<DualityReport> {
    let s = (p.a + p.b) as i64;
    let hf_symmetric = hf.support().iter().all(|&j| hf.get(s - 2 - j) == hf.get(j));
    let x = hr_complex(p)?;
    let betti = betti_table(&x)?;
    let betti_palindromic = betti.reflect(4, s + 2) == betti;
    let dual = dualize(&x, s + 2);
    let seq = p.sequence();
    let mut equivalences = Vec::new();
    for (k, m) in x.maps().iter().enumerate() {
        let sm = apply_sigma_for(m, &seq)?;
        let found = signed_perm_equiv(&sm, &dual.maps()[k]).is_some();
        equivalences.push(MapEquivalence {
            map: format!("sigma({})", x.map_names()[k]),
            dual: dual.map_names()[k].clone(),
            found,
        });
    }
    Ok(DualityReport {
        hf_symmetric,
        betti_palindromic,
        equivalences,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationRow {
    pub degree: i64,
    pub resolution: usize,
    pub saturation: usize,
}

/// Compares `HF(HR(C))` with `dim (I_C^sat)_t - dim (I_C)_t`, the saturation
/// taken with exponent `a + 2`.
pub fn hr_saturation_crosscheck(
    p: &CurveParams,
    window: RangeInclusive<i64>,
    field: FieldChoice,
) -> Result<Vec<SaturationRow>> {
    let gens = curve_ideal(p).gens();
    let hr = hr_hilbert(p, window.clone(), field)?;
    let n = p.a + 2;
    window
        .map(|t| {
            let sat = saturation_piece_dim(&gens, t, n, field)?;
            let ideal = ideal_piece_dim(&gens, t, field)?;
            Ok(SaturationRow {
                degree: t,
                resolution: hr.computed.get(t),
                saturation: sat - ideal,
            })
        })
        .collect()
}

/// `v`-exponents of the monomials `s^u t^v` in degree `n` of the semigroup
/// ring `k[s^d, s^a t^b, s^b t^a, t^d]`, as a membership mask on `[0, n·d]`.
fn semigroup_levels(p: &CurveParams, top: usize) -> Vec<Vec<bool>> {
    let d = p.degree() as usize;
    let steps = [0, p.b as usize, p.a as usize, d];
    let mut levels = vec![vec![true]];
    for n in 1..=top {
        let prev = &levels[n - 1];
        let mut cur = vec![false; n * d + 1];
        for (v, _) in prev.iter().enumerate().filter(|(_, on)| **on) {
            for s in steps {
                cur[v + s] = true;
            }
        }
        levels.push(cur);
    }
    levels
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupRow {
    pub degree: i64,
    pub resolution: usize,
    /// `dim (R_{x0} ∩ R_{x3})_t - dim R_t` on the semigroup ring `R`.
    pub semigroup: usize,
    /// `dim R_t` agrees with `dim A_t - dim (I_C)_t`.
    pub coordinate_ring_agrees: bool,
}

/// Computes `HR(C) = H¹_m(A/I_C)` combinatorially. `A/I_C` is the semigroup
/// ring `R` of the parametrization, `(x0, x3)` is primary to the maximal
/// ideal modulo `I_C`, and the Čech complex on `x0, x3` gives
/// `H¹ = (R_{x0} ∩ R_{x3}) / R`. A monomial lies in `R_{x0}` (resp. `R_{x3}`)
/// when some multiple by `x0^k` (resp. `x3^k`) lies in `R`.
pub fn hr_semigroup_crosscheck(
    p: &CurveParams,
    window: RangeInclusive<i64>,
    field: FieldChoice,
) -> Result<Vec<SemigroupRow>> {
    let gens = curve_ideal(p).gens();
    let hr = hr_hilbert(p, window.clone(), field)?;
    let d = p.degree() as usize;
    let reach = (p.a * p.b + p.degree()) as usize;
    let top = (*window.end()).max(0) as usize;
    let levels = semigroup_levels(p, top + reach);
    window
        .map(|t| {
            let (semigroup, r_dim) = if t < 0 {
                (0, 0)
            } else {
                let j = t as usize;
                let r_dim = levels[j].iter().filter(|on| **on).count();
                let sections = (0..=j * d)
                    .filter(|&v| {
                        (0..=reach).any(|k| levels[j + k][v])
                            && (0..=reach).any(|k| levels[j + k][v + k * d])
                    })
                    .count();
                (sections - r_dim, r_dim)
            };
            let coordinate = dim_a(t) - ideal_piece_dim(&gens, t, field)?;
            Ok(SemigroupRow {
                degree: t,
                resolution: hr.computed.get(t),
                semigroup,
                coordinate_ring_agrees: coordinate == r_dim,
            })
        })
        .collect()
}

/// `max(j - i)` over the Betti table of a graded complex.
pub fn regularity_readoff(x: &FreeComplex) -> Result<i64> {
    regularity(&betti_table(x)?).ok_or_else(|| Error::usage("empty complex has no regularity"))
}

/// Betti table and locally linear profile of the `HR(C)` resolution.
pub fn hr_gap(p: &CurveParams) -> Result<(BettiTable, Option<LocalLinearProfile>)> {
    let b = betti_table(&hr_complex(p)?)?;
    let profile = locally_linear_classify(&b);
    Ok((b, profile))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistAudit {
    pub map: String,
    /// Degree gap between source and target twists as printed.
    pub printed_gap: i64,
    /// Degree of the nonzero entries.
    pub entry_degree: Option<u32>,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaDiagnostics {
    pub param: usize,
    pub composition_zero: bool,
    pub audit: Vec<TwistAudit>,
    /// `HF(Coker A'')` with homogeneous twists, target generators in degree
    /// `a - 2`.
    pub coker_a_dbl_prime: HilbertFunction,
    /// `HF(M(2))`, i.e. `t ↦ dim M_{t+2}`.
    pub m_shifted: HilbertFunction,
    /// `HF(Coker A')` with the twists of the resolution of `M`.
    pub coker_a_prime: HilbertFunction,
}

/// Findings on the `D1`-type complex with parameter `a - b + 1`; nothing is
/// asserted.
pub fn omega_diagnostics(
    p: &CurveParams,
    window: RangeInclusive<i64>,
    field: FieldChoice,
) -> Result<OmegaDiagnostics> {
    let param = p.construction_param() + 1;
    let seq = p.sequence();
    let c = assemble(Assembled::C, param, &seq)?;
    let app = assemble(Assembled::ADblPrime, param, &seq)?;
    let composition_zero = check_product("C", &c, "A''", &app)?.zero;
    let a = p.a as i64;
    // printed twists -a, -a+1, -a+2: generator degrees a, a-1, a-2
    let printed = [("C", &c, a - (a - 1)), ("A''", &app, (a - 1) - (a - 2))];
    let audit = printed
        .iter()
        .map(|(name, m, gap)| {
            let entry_degree = m
                .entries()
                .find(|(_, _, e)| !e.is_zero())
                .and_then(|(_, _, e)| e.homogeneous_degree());
            TwistAudit {
                map: name.to_string(),
                printed_gap: *gap,
                entry_degree,
                consistent: entry_degree.map(i64::from) == Some(*gap),
            }
        })
        .collect();
    let app_graded = app.shifted(a - 2 - app.tgt_degrees().expect("graded")[0]);
    let coker_a_dbl_prime = coker_hilbert(&app_graded, window.clone(), field, None)?;
    let gens = curve_ideal(p).gens();
    let m_values = window
        .clone()
        .map(|t| Ok((t, ideal_piece_dim(&gens, t + 2, field)? - dim_a(t))))
        .collect::<Result<Vec<_>>>()?;
    let a_prime = m_resolution(p)?.maps()[1].clone();
    let coker_a_prime = coker_hilbert(&a_prime, window, field, None)?;
    Ok(OmegaDiagnostics {
        param,
        composition_zero,
        audit,
        coker_a_dbl_prime,
        m_shifted: HilbertFunction::from_values(m_values),
        coker_a_prime,
    })
}

/// Exactness scan of a curve complex with interior homology and left
/// injectivity.
pub fn exactness(
    x: &FreeComplex,
    window: RangeInclusive<i64>,
    field: FieldChoice,
) -> Result<crate::gradedla::HomologyReport> {
    if !compose_check(x).all_zero() {
        return Err(Error::integrity(format!(
            "{} does not compose to zero",
            x.name()
        )));
    }
    homology_dims(x, window, field, None)
}
