//! Acceptance suite: each test pins one headline guarantee end to end
//! and finishes with a single PASS line. Oracles used for cross-checks
//! (prime-field elimination, prime-power merging, triangular
//! back-substitution) live in this file and are independent of the
//! library's code paths.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use essdim::ed::{
    cd_torus, compression_search, construct_independent, ed_abelian, ed_forms, ed_hypersurface,
    ed_projective, ed_torus, extend_projective, forms_matrix, AbelianGroupSpec, TorusActionSpec,
};
use essdim::intmat::IntMatrix;
use essdim::laurent::{uniformizer_change_matrix, ExponentVector, LaurentPoly};

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, max_abs: i64) -> IntMatrix {
    IntMatrix::from_fn(rows, cols, |_, _| {
        BigInt::from(rng.gen_range(-max_abs..=max_abs))
    })
}

fn random_poly(rng: &mut StdRng, nvars: usize) -> LaurentPoly {
    loop {
        let mut poly = LaurentPoly::zero(nvars);
        for _ in 0..rng.gen_range(1..=5) {
            let coords: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-5..=5)).collect();
            let numer = loop {
                let c = rng.gen_range(-9..=9);
                if c != 0 {
                    break c;
                }
            };
            let denom = rng.gen_range(1..=3);
            let coeff = BigRational::new(BigInt::from(numer), BigInt::from(denom));
            poly = poly.add(&LaurentPoly::monomial(ExponentVector::new(coords), coeff));
        }
        if !poly.is_zero() {
            return poly;
        }
    }
}

#[test]
fn elliptic_curve_orbits_have_essential_dimension_two() {
    let spec = TorusActionSpec::new(mat(&[&[4], &[6]]));
    let start = Instant::now();
    let ed = ed_torus(&spec);
    let elapsed = start.elapsed();
    assert_eq!(ed, 2);
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!("PASS: elliptic curve orbits: ed = 2 in {elapsed:?}");
}

#[test]
fn rigid_forms_match_the_closed_form() {
    let start = Instant::now();
    let quadratic: Vec<usize> = (1..=6).map(|m| ed_forms(m, 2).unwrap()).collect();
    assert_eq!(quadratic, vec![1, 2, 4, 7, 11, 16]);
    for m in 1..=5 {
        for d in 1..=4 {
            let expected = if d > 1 { binomial(m + d - 1, d) - m + 1 } else { 0 };
            assert_eq!(ed_forms(m, d).unwrap(), expected, "forms m={m} d={d}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("PASS: rigid forms table and closed form in {elapsed:?}");
}

#[test]
fn projective_examples_match_printed_divisors() {
    assert_eq!(ed_projective(&TorusActionSpec::new(mat(&[&[2], &[3]]))), 0);
    assert_eq!(ed_projective(&TorusActionSpec::new(mat(&[&[-2], &[3]]))), 1);
    let extended = extend_projective(&mat(&[&[-2], &[3]]));
    assert_eq!(extended, mat(&[&[-2, 1], &[3, 1]]));
    assert_eq!(
        extended.elementary_divisors(),
        vec![BigInt::one(), BigInt::from(5)]
    );
    println!("PASS: projective weight examples, divisors (1,5)");
}

#[test]
fn hypersurfaces_match_the_closed_form_via_divisors() {
    for m in 1..=5 {
        for d in 1..=4 {
            assert_eq!(
                ed_hypersurface(m, d).unwrap(),
                binomial(m + d - 1, d) - m,
                "hypersurface m={m} d={d}"
            );
        }
    }
    println!("PASS: hypersurface closed form on the m <= 5, d <= 4 grid");
}

/// Invariant factors by prime-power merging: for each prime, sort its
/// exponents across the moduli descending; the k-th largest invariant
/// factor collects the k-th largest power of every prime.
fn invariant_factors_by_merging(moduli: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in moduli {
        let mut rest = m;
        let mut p = 2;
        while p * p <= rest {
            if rest % p == 0 {
                let mut e = 0;
                while rest % p == 0 {
                    rest /= p;
                    e += 1;
                }
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
        if rest > 1 {
            by_prime.entry(rest).or_default().push(1);
        }
    }
    let count = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; count];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in exps.into_iter().enumerate() {
            factors[k] *= p.pow(e);
        }
    }
    factors.reverse();
    factors
}

#[test]
fn abelian_rank_agrees_with_prime_power_merging() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..200 {
        let len = rng.gen_range(1..=5);
        let moduli: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=60)).collect();
        let big: Vec<BigInt> = moduli.iter().map(|&m| BigInt::from(m)).collect();
        let merged = invariant_factors_by_merging(&moduli);
        assert_eq!(
            ed_abelian(&big).unwrap(),
            merged.len(),
            "moduli {moduli:?}"
        );
        let spec = AbelianGroupSpec::new(big).unwrap();
        let factors: Vec<u64> = spec
            .invariant_factors()
            .iter()
            .map(|d| u64::try_from(d).unwrap())
            .collect();
        assert_eq!(factors, merged, "moduli {moduli:?}");
    }
    println!("PASS: abelian rank matches prime-power merging on 200 random moduli lists");
}

#[test]
fn compression_search_recovers_the_divisor_formula() {
    let start = Instant::now();
    let instances: Vec<(&str, IntMatrix)> = vec![
        ("projective example 1", mat(&[&[2], &[3]])),
        ("projective example 2", mat(&[&[-2], &[3]])),
        ("projective example 2 extended", extend_projective(&mat(&[&[-2], &[3]]))),
        ("elliptic weights", mat(&[&[4], &[6]])),
        ("quadratic forms matrix", forms_matrix(2, 2).unwrap()),
        ("identity(3)", IntMatrix::identity(3)),
        ("diag(2,3)", IntMatrix::diagonal(&[BigInt::from(2), BigInt::from(3)])),
        ("all twos", mat(&[&[2, 2], &[2, 2]])),
    ];
    for (name, e) in instances {
        let spec = TorusActionSpec::new(e);
        let expected = ed_torus(&spec);
        let witness = compression_search(&spec, 6);
        assert!(
            witness.achieved_rank() >= expected,
            "{name}: witness beat the formula"
        );
        assert_eq!(witness.achieved_rank(), expected, "{name}");
        assert_eq!(
            witness.function_exponents().rank_rational(),
            witness.achieved_rank(),
            "{name}: witness rank mismatch"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
    println!("PASS: compression search matches the divisor formula in {elapsed:?}");
}

#[test]
fn smith_decomposition_properties_hold_on_random_matrices() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(7);
    for case in 0..1000 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let a = random_matrix(&mut rng, rows, cols, 50);
        let snf = a.smith_normal_form();
        assert_eq!(
            snf.p().matmul(&a).unwrap().matmul(snf.q()).unwrap(),
            *snf.d(),
            "case {case}: transform identity"
        );
        assert!(snf.p().det().unwrap().abs().is_one(), "case {case}: det p");
        assert!(snf.q().det().unwrap().abs().is_one(), "case {case}: det q");
        let divisors = snf.divisors();
        for d in divisors {
            assert!(d.is_positive(), "case {case}: positivity");
        }
        for w in divisors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "case {case}: divisibility");
        }
        // the two rank routes agree
        assert_eq!(a.rank_rational(), divisors.len(), "case {case}: rank");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("PASS: 1000 random Smith decompositions verified in {elapsed:?}");
}

/// Gaussian elimination over the field with `p` elements.
fn rank_by_prime_field_elimination(a: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let big_p = BigInt::from(p);
    let mut w: Vec<Vec<u64>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| u64::try_from(a[(r, c)].mod_floor(&big_p)).unwrap())
                .collect()
        })
        .collect();
    let inv = |x: u64| -> u64 {
        // Fermat inverse
        let mut base = x % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| w[r][col] % p != 0) else {
            continue;
        };
        w.swap(rank, pivot);
        let scale = inv(w[rank][col]);
        for c in col..cols {
            w[rank][c] = w[rank][c] * scale % p;
        }
        for r in 0..rows {
            if r != rank && w[r][col] != 0 {
                let factor = w[r][col];
                for c in col..cols {
                    w[r][c] = (w[r][c] + (p - factor) * w[rank][c]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[test]
fn rank_mod_never_exceeds_rational_rank() {
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut rng = StdRng::seed_from_u64(11);
    for case in 0..1000 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let a = random_matrix(&mut rng, rows, cols, 30);
        let modulus = BigInt::from(rng.gen_range(2..=40i64) * if rng.gen_bool(0.2) { -1 } else { 1 });
        let modular = a.rank_mod(&modulus).unwrap();
        assert!(
            a.rank_rational() >= modular,
            "case {case}: rank dropped below rank mod {modulus}"
        );
        let p = primes[rng.gen_range(0..primes.len())];
        assert_eq!(
            a.rank_mod(&BigInt::from(p)).unwrap(),
            rank_by_prime_field_elimination(&a, p),
            "case {case}: prime field cross-check at p = {p}"
        );
    }
    println!("PASS: 1000 random rank-mod comparisons with prime-field cross-checks");
}

#[test]
fn rank_subadditivity_sandwich() {
    let mut rng = StdRng::seed_from_u64(13);
    for case in 0..1000 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let a = random_matrix(&mut rng, rows, cols, 30);
        let b = random_matrix(&mut rng, rows, cols, 30);
        let sum = a.add(&b).unwrap().rank_rational();
        let (ra, rb) = (a.rank_rational(), b.rank_rational());
        assert!(sum <= ra + rb, "case {case}: upper bound");
        assert!(sum >= ra.abs_diff(rb), "case {case}: lower bound");
    }
    println!("PASS: 1000 random rank subadditivity sandwiches");
}

#[test]
fn valuation_axioms_hold_on_random_pairs() {
    let mut rng = StdRng::seed_from_u64(17);
    for case in 0..1000 {
        let nvars = rng.gen_range(1..=3);
        let f = random_poly(&mut rng, nvars);
        let g = random_poly(&mut rng, nvars);
        let vf = f.valuation().unwrap();
        let vg = g.valuation().unwrap();
        assert_eq!(
            f.mul(&g).valuation().unwrap(),
            &vf + &vg,
            "case {case}: homomorphism"
        );
        let sum = f.add(&g);
        if !sum.is_zero() {
            let vs = sum.valuation().unwrap();
            let min = (&vf).min(&vg).clone();
            assert!(vs >= min, "case {case}: ultrametric");
            if vf != vg {
                assert_eq!(vs, min, "case {case}: equality for distinct values");
            }
        }
        let constant = LaurentPoly::constant(
            nvars,
            BigRational::new(BigInt::from(rng.gen_range(1..=20)), BigInt::from(3)),
        );
        assert_eq!(
            constant.valuation().unwrap(),
            ExponentVector::zero(nvars),
            "case {case}: constants map to zero"
        );
    }
    println!("PASS: 1000 random valuation axiom checks");
}

/// Inverse of a unit upper triangular matrix by back-substitution, column
/// by column. Exact over the integers.
fn triangular_inverse(c: &IntMatrix) -> IntMatrix {
    let n = c.rows();
    let mut inv = IntMatrix::zeros(n, n);
    for col in 0..n {
        let mut x = vec![BigInt::zero(); n];
        for i in (0..n).rev() {
            let mut acc = if i == col { BigInt::one() } else { BigInt::zero() };
            for j in i + 1..n {
                acc -= &c[(i, j)] * &x[j];
            }
            x[i] = acc;
        }
        for i in 0..n {
            inv[(i, col)] = x[i].clone();
        }
    }
    inv
}

#[test]
fn uniformizer_change_matches_the_exact_inverse() {
    let mut rng = StdRng::seed_from_u64(19);
    for case in 0..500 {
        let n = rng.gen_range(1..=4);
        let chain = IntMatrix::from_fn(n, n, |r, c| {
            if r == c {
                BigInt::one()
            } else if r < c {
                BigInt::from(rng.gen_range(-5..=5))
            } else {
                BigInt::zero()
            }
        });
        let a = uniformizer_change_matrix(&chain).unwrap();
        assert_eq!(a, triangular_inverse(&chain), "case {case}: inverse");
        assert_eq!(
            chain.matmul(&a).unwrap(),
            IntMatrix::identity(n),
            "case {case}: product"
        );

        let f = random_poly(&mut rng, n);
        // v'(f) = lex-min of e * A over the terms of f
        let transformed = f
            .terms()
            .map(|(e, _)| {
                let row = e.to_row_matrix().matmul(&a).unwrap();
                ExponentVector::new(
                    (0..n).map(|j| i64::try_from(&row[(0, j)]).unwrap()).collect(),
                )
            })
            .min()
            .unwrap();
        let through_a = f.valuation().unwrap().to_row_matrix().matmul(&a).unwrap();
        let through_a = ExponentVector::new(
            (0..n).map(|j| i64::try_from(&through_a[(0, j)]).unwrap()).collect(),
        );
        assert_eq!(transformed, through_a, "case {case}: valuation transport");
    }
    println!("PASS: 500 random uniformizer changes match the exact inverse");
}

#[test]
fn independence_certificates_are_sound() {
    let mut rng = StdRng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 500 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        // bias towards rank-deficient inputs half the time
        let v = if rng.gen_bool(0.5) {
            random_matrix(&mut rng, rows, cols, 9)
        } else {
            let inner = rng.gen_range(1..=2);
            let left = random_matrix(&mut rng, rows, inner, 4);
            let right = random_matrix(&mut rng, inner, cols, 4);
            left.matmul(&right).unwrap()
        };
        if v.is_zero() {
            continue;
        }
        checked += 1;
        let cert = construct_independent(&v).unwrap();
        let s = cert.rank();
        assert_eq!(s, v.rank_rational(), "certificate rank");
        assert_eq!(
            cert.lambda_matrix().matmul(&v).unwrap(),
            *cert.g_exponents(),
            "g rows are the certified products"
        );
        assert_eq!(cert.g_exponents().rank_rational(), s, "g rows independent");
        for j in 0..s {
            for (i, &col) in cert.col_select().iter().enumerate() {
                let expected = if i == j {
                    cert.lambda().clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(
                    cert.g_exponents()[(j, col)],
                    expected,
                    "scaled identity block"
                );
            }
            for col in 0..cert.col_select()[j] {
                assert!(
                    cert.g_exponents()[(j, col)].is_zero(),
                    "leading zeros before the pivot column"
                );
            }
        }
        assert!(cert.lambda().is_positive());
    }
    println!("PASS: 500 random independence certificates verified");
}

#[test]
fn projective_drop_is_at_most_one() {
    let mut rng = StdRng::seed_from_u64(29);
    for case in 0..500 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(0..=4);
        let e = random_matrix(&mut rng, rows, cols, 9);
        let spec = TorusActionSpec::new(e);
        let affine = ed_torus(&spec);
        let projective = ed_projective(&spec);
        assert!(affine >= projective, "case {case}: monotone");
        assert!(projective + 1 >= affine, "case {case}: drop bounded by one");
    }
    println!("PASS: 500 random projective comparisons");
}

#[test]
fn row_extensions_never_compress_better() {
    let mut rng = StdRng::seed_from_u64(31);
    for case in 0..500 {
        let rows = rng.gen_range(2..=6);
        let cols = rng.gen_range(0..=4);
        let e = random_matrix(&mut rng, rows, cols, 9);
        let base_rows = rng.gen_range(1..rows);
        let base = IntMatrix::from_fn(base_rows, cols, |r, c| e[(r, c)].clone());
        assert!(
            ed_torus(&TorusActionSpec::new(e.clone())) >= ed_torus(&TorusActionSpec::new(base)),
            "case {case}: extension below base"
        );
    }
    println!("PASS: 500 random row extensions");
}

// The remaining tests pin module-level properties that the criteria above
// rely on implicitly.

#[test]
fn cd_decomposes_ed() {
    let mut rng = StdRng::seed_from_u64(37);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(0..=4);
        let e = random_matrix(&mut rng, rows, cols, 9);
        let r = e.elementary_divisors().len();
        let spec = TorusActionSpec::new(e);
        assert!(ed_torus(&spec) <= spec.coordinates());
        assert_eq!(
            ed_torus(&spec),
            cd_torus(&spec) + (spec.coordinates() - r)
        );
    }
    println!("PASS: canonical dimension decomposition on 300 random matrices");
}

#[test]
fn single_column_dichotomy() {
    let mut rng = StdRng::seed_from_u64(41);
    for _ in 0..300 {
        let rows = rng.gen_range(1..=6);
        let e = random_matrix(&mut rng, rows, 1, 20);
        let gcd = (0..rows)
            .map(|r| e[(r, 0)].clone())
            .fold(BigInt::zero(), |acc, v| acc.gcd(&v));
        let expected = if gcd.is_one() { rows - 1 } else { rows };
        assert_eq!(ed_torus(&TorusActionSpec::new(e)), expected);
    }
    println!("PASS: single-parameter dichotomy on 300 random columns");
}

#[test]
fn forms_row_order_does_not_matter() {
    let mut rng = StdRng::seed_from_u64(43);
    for (m, d) in [(2, 2), (3, 2), (2, 3), (4, 2)] {
        let base = forms_matrix(m, d).unwrap();
        let mut order: Vec<usize> = (0..base.rows()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let shuffled = IntMatrix::from_fn(base.rows(), base.cols(), |r, c| {
            base[(order[r], c)].clone()
        });
        assert_eq!(
            ed_torus(&TorusActionSpec::new(base)),
            ed_torus(&TorusActionSpec::new(shuffled))
        );
    }
    println!("PASS: forms matrix row order is immaterial");
}

/// Reference search with no pruning at all: walk the whole box in
/// row-major lexicographic order and keep the first witness of the
/// minimum rank.
fn naive_search(e: &IntMatrix, bound: i64) -> (usize, IntMatrix) {
    let (n, m) = (e.rows(), e.cols());
    let cells = m * n;
    let rank_of = |digits: &[i64]| {
        let u = IntMatrix::from_fn(m, n, |r, c| BigInt::from(digits[r * n + c]));
        let fs = IntMatrix::identity(n)
            .add(&e.matmul(&u).unwrap())
            .unwrap();
        (fs.rank_rational(), u)
    };
    let mut digits = vec![-bound; cells];
    let (mut best_rank, mut best_u) = rank_of(&digits);
    loop {
        let mut p = cells;
        loop {
            if p == 0 {
                return (best_rank, best_u);
            }
            p -= 1;
            if digits[p] < bound {
                digits[p] += 1;
                break;
            }
            digits[p] = -bound;
        }
        let (rank, u) = rank_of(&digits);
        if rank < best_rank {
            best_rank = rank;
            best_u = u;
        }
    }
}

#[test]
fn search_matches_naive_enumeration() {
    let mut rng = StdRng::seed_from_u64(53);
    for case in 0..60 {
        let (rows, cols, max_bound) = match case % 3 {
            0 => (rng.gen_range(1..=3), 1, 2),
            1 => (rng.gen_range(1..=2), rng.gen_range(1..=2), 2),
            _ => (rng.gen_range(1..=2), 3, 1),
        };
        let e = random_matrix(&mut rng, rows, cols, 4);
        let bound = rng.gen_range(0..=max_bound);
        let (expected_rank, expected_u) = naive_search(&e, bound);
        let witness = compression_search(&TorusActionSpec::new(e.clone()), bound as usize);
        assert_eq!(
            witness.achieved_rank(),
            expected_rank,
            "case {case}: rank for {e:?} at bound {bound}"
        );
        assert_eq!(
            witness.parameter_valuations(),
            &expected_u,
            "case {case}: witness for {e:?} at bound {bound}"
        );
    }
    println!("PASS: pruned search equals naive enumeration on 60 random instances");
}

#[test]
fn monomial_subfields_respect_the_rank_bound() {
    let mut rng = StdRng::seed_from_u64(47);
    for _ in 0..300 {
        let nvars = rng.gen_range(1..=4);
        let count = rng.gen_range(1..=4);
        // monomial functions: valuations are exactly their exponent rows
        let exponents = random_matrix(&mut rng, count, nvars, 6);
        let fs: Vec<essdim::laurent::RationalFunction> = (0..count)
            .map(|r| {
                let coords: Vec<i64> =
                    (0..nvars).map(|c| i64::try_from(&exponents[(r, c)]).unwrap()).collect();
                essdim::laurent::RationalFunction::from_poly(LaurentPoly::monomial(
                    ExponentVector::new(coords),
                    BigRational::one(),
                ))
            })
            .collect();
        let v = essdim::laurent::valuation_matrix(&fs).unwrap();
        assert!(v.rank_rational() <= exponents.rank_rational());
        assert_eq!(v, exponents);
    }
    println!("PASS: monomial subfield rank bound on 300 random families");
}
