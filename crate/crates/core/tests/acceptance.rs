//! End-to-end acceptance checks. Every comparison is bit-exact; each test
//! prints one PASS line on success.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poincare::branch::{valuation_of, FieldPoly2, PuiseuxBranch, Valuation};
use poincare::galois::{
    attach_divisorial, orbit_of, splitting_tower, Divisorial, GResolutionData, Splitting,
};
use poincare::io::parse_rat;
use poincare::lseries::{specialize_l, BinomialFactorization, LPolynomial};
use poincare::numfield::{FieldElement, NumberField, QPoly};
use poincare::oracle::{curve_dims, divisorial_dims, oracle_generalized};
use poincare::poincare::{
    classical_curve, classical_divisorial, generalized_curve, generalized_divisorial,
    stepwise_pj, verify_geometric_sums,
};
use poincare::{Int, Rat};

fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

fn rationals() -> NumberField {
    NumberField::rationals()
}

fn sqrt2_field() -> NumberField {
    NumberField::quadratic(2).unwrap()
}

/// Q(sqrt2, sqrt3) = Q(theta), theta = sqrt2 + sqrt3.
fn biquadratic_field() -> NumberField {
    let minpoly = QPoly::from_coeffs(vec![rat(1), rat(0), rat(-10), rat(0), rat(1)]);
    let autos = vec![
        vec![rat(0), rat(1), rat(0), rat(0)],
        vec![rat(0), rat(-1), rat(0), rat(0)],
        vec![rat(0), rat(-10), rat(0), rat(1)],
        vec![rat(0), rat(10), rat(0), rat(-1)],
    ];
    NumberField::make_field(minpoly, autos).unwrap()
}

/// The cyclic cubic field of x^3 - 3x + 1.
fn cyclic_cubic_field() -> NumberField {
    let minpoly = QPoly::from_coeffs(vec![rat(1), rat(-3), rat(0), rat(1)]);
    let autos = vec![
        vec![rat(0), rat(1), rat(0)],
        vec![rat(-2), rat(0), rat(1)],
        vec![rat(2), rat(-1), rat(-1)],
    ];
    NumberField::make_field(minpoly, autos).unwrap()
}

fn branch(field: &NumberField, m: usize, terms: Vec<(usize, FieldElement)>) -> PuiseuxBranch {
    PuiseuxBranch::new(field.clone(), m, terms).unwrap()
}

fn semigroup_4_6_13_graph() -> GResolutionData {
    GResolutionData {
        g: 2,
        m_sigma: vec![4, 6, 13],
        m_tau: vec![12, 26],
        splittings: vec![],
        divisorial: None,
    }
}

fn factorization_from(factors: &[(usize, usize, i64)]) -> BinomialFactorization {
    let mut f = BinomialFactorization::new();
    for &(ell, m, s) in factors {
        f.push(ell, m, s).unwrap();
    }
    f
}

#[test]
fn criterion_1_divisorial_closed_forms() {
    let order = 60;
    let base = semigroup_4_6_13_graph();
    let d26 = attach_divisorial(&base, 26).unwrap();
    let d27 = attach_divisorial(&base, 27).unwrap();

    // The four displayed closed forms.
    let classical_26 = factorization_from(&[(0, 12, 1), (0, 4, -1), (0, 6, -1), (0, 13, -1)]);
    let classical_27 = factorization_from(&[
        (0, 12, 1),
        (0, 26, 1),
        (0, 4, -1),
        (0, 6, -1),
        (0, 13, -1),
        (0, 27, -1),
    ]);
    let generalized_26 = factorization_from(&[
        (0, 12, 1),
        (0, 26, 1),
        (0, 4, -1),
        (0, 6, -1),
        (0, 13, -1),
        (1, 26, -1),
    ]);
    let generalized_27 = factorization_from(&[
        (0, 12, 1),
        (0, 26, 1),
        (0, 4, -1),
        (0, 6, -1),
        (0, 13, -1),
        (1, 27, -1),
    ]);

    assert_eq!(
        classical_divisorial(&d26, order).unwrap(),
        classical_26.expand(order).unwrap()
    );
    assert_eq!(
        classical_divisorial(&d27, order).unwrap(),
        classical_27.expand(order).unwrap()
    );
    assert_eq!(
        generalized_divisorial(&d26, order).unwrap(),
        generalized_26.expand(order).unwrap()
    );
    assert_eq!(
        generalized_divisorial(&d27, order).unwrap(),
        generalized_27.expand(order).unwrap()
    );

    // Factored output matches the displays verbatim (canonical factor
    // order is ascending, which is the displayed order).
    use poincare::poincare::{factorization, SeriesKind, ValuationKind};
    let factored = |data, kind| {
        factorization(data, order, kind, ValuationKind::Divisorial)
            .unwrap()
            .to_string()
    };
    assert_eq!(
        factored(&d26, SeriesKind::Classical),
        "(1 - t^12) / ((1 - t^4)(1 - t^6)(1 - t^13))"
    );
    assert_eq!(
        factored(&d27, SeriesKind::Classical),
        "(1 - t^12)(1 - t^26) / ((1 - t^4)(1 - t^6)(1 - t^13)(1 - t^27))"
    );
    assert_eq!(
        factored(&d26, SeriesKind::Generalized),
        "(1 - t^12)(1 - t^26) / ((1 - t^4)(1 - t^6)(1 - t^13)(1 - L*t^26))"
    );
    assert_eq!(
        factored(&d27, SeriesKind::Generalized),
        "(1 - t^12)(1 - t^26) / ((1 - t^4)(1 - t^6)(1 - t^13)(1 - L*t^27))"
    );
    println!("ACCEPTANCE 1: PASS divisorial closed forms reproduced at order 60");
}

#[test]
fn criterion_2_transversal_pair_identity() {
    assert!(poincare::poincare::fixture_example1());
    println!("ACCEPTANCE 2: PASS bivariate identity and fibre classes");
}

#[test]
fn criterion_3_curve_oracle_equivalence() {
    let v_max = 40;
    let q = rationals();
    let k2 = sqrt2_field();
    let fixtures = vec![
        branch(&k2, 1, vec![(1, k2.alpha())]),
        branch(&q, 2, vec![(3, q.one())]),
        branch(&k2, 2, vec![(3, k2.one()), (4, k2.alpha())]),
        branch(&q, 4, vec![(6, q.one()), (7, q.one())]),
    ];
    for b in &fixtures {
        let data = splitting_tower(&orbit_of(b).unwrap()).unwrap();
        let dims = curve_dims(b, v_max).unwrap();
        let classical = classical_curve(&data, v_max).unwrap();
        for (v, &a) in dims.iter().enumerate() {
            assert_eq!(
                classical.coeff(v),
                &LPolynomial::constant(Int::from(a as i64)),
                "classical coefficient of t^{v}"
            );
        }
        assert_eq!(
            oracle_generalized(&dims),
            generalized_curve(&data, v_max).unwrap()
        );
    }
    println!("ACCEPTANCE 3: PASS curve oracle equals the product formulas at v_max = 40");
}

#[test]
fn criterion_4_divisorial_oracle_equivalence() {
    let v_max = 35;
    let q = rationals();

    // Smooth trunk, multiplicity valuation.
    let line = branch(&q, 1, vec![]);
    let data = attach_divisorial(&splitting_tower(&orbit_of(&line).unwrap()).unwrap(), 1).unwrap();
    let dims = divisorial_dims(&line, 1, v_max).unwrap();
    let classical = classical_divisorial(&data, v_max).unwrap();
    for (v, &a) in dims.iter().enumerate() {
        assert_eq!(classical.coeff(v), &LPolynomial::constant(Int::from(a as i64)));
    }

    // <4,6,13> trunk at both displayed vertices.
    let b = branch(&q, 4, vec![(6, q.one()), (7, q.one())]);
    let base = splitting_tower(&orbit_of(&b).unwrap()).unwrap();
    for m_delta in [26, 27] {
        let data = attach_divisorial(&base, m_delta).unwrap();
        let dims = divisorial_dims(&b, m_delta, v_max).unwrap();
        let classical = classical_divisorial(&data, v_max).unwrap();
        for (v, &a) in dims.iter().enumerate() {
            assert_eq!(
                classical.coeff(v),
                &LPolynomial::constant(Int::from(a as i64)),
                "M_delta = {m_delta}, t^{v}"
            );
        }
    }
    println!("ACCEPTANCE 4: PASS divisorial oracle equals the product formulas at v_max = 35");
}

/// A random nonzero element with small integer coordinates.
fn random_element(rng: &mut ChaCha8Rng, field: &NumberField) -> FieldElement {
    loop {
        let coords: Vec<Rat> = (0..field.degree()).map(|_| rat(rng.gen_range(-2..=2))).collect();
        let e = field.element(coords).unwrap();
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random branch whose graph data stays within the acceptance bounds.
fn random_branch(rng: &mut ChaCha8Rng, fields: &[NumberField]) -> PuiseuxBranch {
    let field = &fields[rng.gen_range(0..fields.len())];
    match rng.gen_range(0..3) {
        // Smooth branch, up to three low-order terms.
        0 => {
            let mut terms = Vec::new();
            for e in 1..=3usize {
                if rng.gen_bool(0.6) {
                    terms.push((e, random_element(rng, field)));
                }
            }
            branch(field, 1, terms)
        }
        // One characteristic pair (2, 3), optional tail.
        1 => {
            let mut terms = vec![(3, random_element(rng, field))];
            if rng.gen_bool(0.5) {
                terms.push((4, random_element(rng, field)));
            }
            if rng.gen_bool(0.3) {
                terms.push((5, random_element(rng, field)));
            }
            branch(field, 2, terms)
        }
        // Two characteristic pairs, semigroup <4,6,13>, rational
        // coefficients to keep the tower small.
        _ => {
            let q = rationals();
            branch(
                &q,
                4,
                vec![
                    (6, q.from_integer(rng.gen_range(1..=3))),
                    (7, q.from_integer(rng.gen_range(1..=3))),
                ],
            )
        }
    }
}

#[test]
fn criterion_5_structural_identities_on_random_data() {
    let order = 80;
    let fields = [rationals(), sqrt2_field(), biquadratic_field(), cyclic_cubic_field()];
    let mut rng = ChaCha8Rng::seed_from_u64(20250823);
    let mut instances = Vec::new();
    while instances.len() < 110 {
        let b = random_branch(&mut rng, &fields);
        let data = splitting_tower(&orbit_of(&b).unwrap()).unwrap();
        if data.g > 3
            || data.splittings.len() > 3
            || data.m_sigma.iter().chain(&data.m_tau).any(|&v| v > 40)
            || data.splittings.iter().any(|s| s.m_rho > 40 || s.ell > 3)
        {
            continue;
        }
        instances.push(data);
    }
    let with_splittings = instances.iter().filter(|d| !d.splittings.is_empty()).count();
    assert!(with_splittings >= 20, "suite must exercise nontrivial towers");

    for data in &instances {
        let generalized = generalized_curve(data, order).unwrap();
        let classical = classical_curve(data, order).unwrap();
        // (a) specialization at L = 1.
        assert_eq!(specialize_l(&generalized, &Int::from(1)), classical);
        // (b) the stepwise recursion telescopes.
        assert_eq!(
            stepwise_pj(data, data.splittings.len() + 1, order).unwrap(),
            generalized
        );
        // (c) geometric-sum structure.
        verify_geometric_sums(&generalized).unwrap();
        // (d) classical coefficients within the tower degree bound.
        let bound = Int::from(
            (data.deg_s() * data.splittings.last().map_or(1, |s| s.ell)) as i64,
        );
        for v in 0..=order {
            let c = classical.coeff(v).as_constant().unwrap().clone();
            assert!(c >= Int::from(0) && c <= bound, "t^{v}: {c} outside [0, {bound}]");
        }
        // (e) divisorial = curve / (1 - L^deg_s t^M_delta).
        let m_delta = data.splittings.last().map_or(5, |s| s.m_rho + 1);
        let with_div = attach_divisorial(data, m_delta).unwrap();
        let expected = generalized.mul_binomial_power(with_div.deg_s(), m_delta, -1);
        assert_eq!(generalized_divisorial(&with_div, order).unwrap(), expected);
    }
    println!(
        "ACCEPTANCE 5: PASS structural identities on {} random instances ({} with splittings)",
        instances.len(),
        with_splittings
    );
}

#[test]
fn criterion_6_stream_truncation_safety() {
    let order = 40;
    // Synthetic infinite tower: splittings every 5 steps, degrees doubling.
    let stream = |cap: usize| -> GResolutionData {
        let mut splittings = Vec::new();
        let mut deg = 1;
        let mut j = 1;
        loop {
            let m_rho = 5 * j;
            if m_rho > cap {
                break;
            }
            splittings.push(Splitting { m_rho, ell: 2, deg });
            deg *= 2;
            j += 1;
        }
        GResolutionData {
            g: 0,
            m_sigma: vec![1],
            m_tau: vec![],
            splittings,
            divisorial: None,
        }
    };
    let short = stream(order);
    let long = stream(2 * order);
    assert!(long.splittings.len() > short.splittings.len());
    assert_eq!(
        generalized_curve(&short, order).unwrap(),
        generalized_curve(&long, order).unwrap()
    );
    assert_eq!(
        classical_curve(&short, order).unwrap(),
        classical_curve(&long, order).unwrap()
    );
    println!("ACCEPTANCE 6: PASS splitting-stream truncation is output-invariant");
}

/// A random bivariate polynomial with small support.
fn random_poly(rng: &mut ChaCha8Rng, field: &NumberField) -> FieldPoly2 {
    let mut f = FieldPoly2::zero(field);
    for _ in 0..rng.gen_range(1..=4) {
        let a = rng.gen_range(0..=3usize);
        let b = rng.gen_range(0..=3usize);
        if rng.gen_bool(0.85) {
            f.add_term(a, b, random_element(rng, field));
        }
    }
    f
}

fn val_min(a: Valuation, b: Valuation) -> Valuation {
    match (a, b) {
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x.min(y)),
        (Valuation::Finite(x), _) | (_, Valuation::Finite(x)) => Valuation::Finite(x),
        _ => Valuation::Infinite,
    }
}

fn val_sum(a: Valuation, b: Valuation) -> Valuation {
    match (a, b) {
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
        _ => Valuation::Infinite,
    }
}

#[test]
fn criterion_7_valuation_axioms() {
    let cap = 100_000;
    let q = rationals();
    let k2 = sqrt2_field();
    let fixtures = vec![
        branch(&k2, 1, vec![(1, k2.alpha())]),
        branch(&q, 2, vec![(3, q.one())]),
        branch(&k2, 2, vec![(3, k2.one()), (4, k2.alpha())]),
        branch(&q, 4, vec![(6, q.one()), (7, q.one())]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for b in &fixtures {
        let field = b.field();
        // The zero germ has infinite value; nonzero constants have value 0.
        assert_eq!(
            valuation_of(&FieldPoly2::zero(field), b, cap),
            Valuation::Infinite
        );
        let mut one = FieldPoly2::zero(field);
        one.add_term(0, 0, field.one());
        assert_eq!(valuation_of(&one, b, cap), Valuation::Finite(0));

        for _ in 0..500 {
            let f = random_poly(&mut rng, field);
            let g = random_poly(&mut rng, field);
            let vf = valuation_of(&f, b, cap);
            let vg = valuation_of(&g, b, cap);
            assert!(!matches!(vf, Valuation::ExceedsCap(_)));
            assert!(!matches!(vg, Valuation::ExceedsCap(_)));

            // Multiplicativity.
            assert_eq!(valuation_of(&f.mul(&g), b, cap), val_sum(vf, vg));
            // Ultrametric inequality, with equality at distinct values.
            let vsum = valuation_of(&f.add(&g), b, cap);
            match (val_min(vf, vg), vsum) {
                (Valuation::Finite(lo), Valuation::Finite(v)) => {
                    assert!(v >= lo);
                    if vf != vg {
                        assert_eq!(v, lo);
                    }
                }
                (Valuation::Finite(_), Valuation::Infinite) => {
                    // Only possible when the leading parts cancel, which
                    // requires equal values.
                    assert_eq!(vf, vg);
                }
                (Valuation::Infinite, v) => assert_eq!(v, Valuation::Infinite),
                _ => unreachable!("cap is never reached"),
            }
            // Scaling invariance.
            let lambda = random_element(&mut rng, field);
            assert_eq!(valuation_of(&f.scale(&lambda), b, cap), vf);
        }
    }
    println!("ACCEPTANCE 7: PASS valuation axioms on 500 random pairs per fixture branch");
}

#[test]
fn acceptance_io_sanity() {
    // The JSON layer used by the CLI accepts the documented rational forms.
    assert_eq!(parse_rat("1/2").unwrap() + parse_rat("1/2").unwrap(), Rat::one());
    assert!(matches!(
        attach_divisorial(&semigroup_4_6_13_graph(), 26).unwrap().divisorial,
        Some(Divisorial { m_delta: 26, deg_s: 1 })
    ));
}
