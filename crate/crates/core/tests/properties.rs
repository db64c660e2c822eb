//! Property tests for the algebraic invariants, plus a few exhaustive sweeps
//! where the domain is small enough to cover completely.

mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::{admissible_r, field, GRID};
use cyclofactor_core::construct::{matrix_type4, matrix_type5, shifted_matrix};
use cyclofactor_core::numtheory::{divisors, gcd, multiplicative_order, prime_factors};
use cyclofactor_core::poly::is_irreducible;
use cyclofactor_core::{
    all_quadratic_factors, build_sigma, cyclotomic, feistel_omega, to_univariate, ConstructionSpec, CoordPerm,
    FieldCtx, Level, Mat2, PermMap, Poly, VariantKind,
};
use proptest::prelude::*;

fn grid_field() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(GRID.to_vec()).prop_map(|(p, k)| field(p, k))
}

fn small_field() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(vec![(2, 1), (3, 1), (2, 2), (5, 1), (7, 1)]).prop_map(|(p, k)| field(p, k))
}

fn elt(ctx: &FieldCtx, level: Level, raw: u32) -> cyclofactor_core::Elt {
    ctx.elt(level, raw % ctx.size(level)).unwrap()
}

fn mat(ctx: &FieldCtx, raw: [u32; 4]) -> Mat2 {
    Mat2::from_indices(ctx, raw.map(|v| v % ctx.q())).unwrap()
}

/// A random `(factor, kind, m)` cell of the grid picked by `pick`.
fn pick_cell(ctx: &Arc<FieldCtx>, pick: usize) -> Option<(cyclofactor_core::QuadFactor, VariantKind, u32)> {
    let mut opts = Vec::new();
    for r in admissible_r(ctx) {
        for h in all_quadratic_factors(r, ctx).unwrap() {
            for kind in [VariantKind::Type4, VariantKind::Type5] {
                opts.push((h, kind));
            }
        }
    }
    if opts.is_empty() {
        return None;
    }
    let (h, kind) = opts[pick % opts.len()];
    let m = 1 + (pick / opts.len()) as u32 % (ctx.q() - 1);
    Some((h, kind, m))
}

/// Permutation made of `count` disjoint `r`-cycles laid out along a seeded
/// shuffle of the points.
fn cycles_of_length(ctx: Arc<FieldCtx>, r: usize, count: usize, seed: u64) -> PermMap {
    let order = PermMap::random(ctx.clone(), seed).into_table();
    let mut table: Vec<u32> = (0..ctx.q2()).collect();
    for c in 0..count {
        let block = &order[c * r..(c + 1) * r];
        for i in 0..r {
            table[block[i] as usize] = block[(i + 1) % r];
        }
    }
    PermMap::from_table(ctx, table).unwrap()
}

/// `c_0 = f(0)`, `c_j = -Σ_a f(a) a^{Q-1-j}` for `j ≥ 1`, with `0^0 = 1`.
fn character_sum_coeffs(ctx: &FieldCtx, values: &[u32]) -> Vec<u32> {
    let ar = ctx.arith(Level::Fq2);
    let n = values.len() as u64;
    let mut out = vec![values[0]];
    for j in 1..n {
        let mut s = 0;
        for (a, &fa) in values.iter().enumerate() {
            let e = n - 1 - j;
            let pw = if a == 0 { u32::from(e == 0) } else { ar.pow(a as u32, e) };
            s = ar.add(s, ar.mul(fa, pw));
        }
        out.push(ar.neg(s));
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn frobenius_is_a_ring_map(ctx in grid_field(), a in any::<u32>(), b in any::<u32>()) {
        let (a, b) = (elt(&ctx, Level::Fq2, a), elt(&ctx, Level::Fq2, b));
        let fr = |x| ctx.frobenius(x).unwrap();
        prop_assert_eq!(fr(ctx.add(a, b).unwrap()), ctx.add(fr(a), fr(b)).unwrap());
        prop_assert_eq!(fr(ctx.mul(a, b).unwrap()), ctx.mul(fr(a), fr(b)).unwrap());
        prop_assert_eq!(fr(a), ctx.pow(a, ctx.q() as i64).unwrap());
    }

    #[test]
    fn trace_is_linear(ctx in grid_field(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b) = (elt(&ctx, Level::Fq2, a), elt(&ctx, Level::Fq2, b));
        let c = elt(&ctx, Level::Fq, c);
        let tr = |x| ctx.trace_q2_to_q(x).unwrap();
        prop_assert_eq!(tr(ctx.add(a, b).unwrap()), ctx.add(tr(a), tr(b)).unwrap());
        let ca = ctx.mul(ctx.embed(c, Level::Fq2).unwrap(), a).unwrap();
        prop_assert_eq!(tr(ca), ctx.mul(c, tr(a)).unwrap());
    }

    #[test]
    fn roots_of_unity_have_exact_order(ctx in grid_field(), pick in any::<usize>()) {
        let q = ctx.q() as u64;
        let ns = divisors(q * q - 1);
        let n = ns[pick % ns.len()];
        let z = ctx.nth_root_of_unity(n).unwrap();
        prop_assert_eq!(ctx.pow(z, n as i64).unwrap(), ctx.one(z.level()));
        for l in prime_factors(n) {
            prop_assert_ne!(ctx.pow(z, (n / l) as i64).unwrap(), ctx.one(z.level()));
        }
    }

    #[test]
    fn cyclotomic_product_and_coprimality(ctx in grid_field(), r in 1u64..=30) {
        prop_assume!(gcd(r, ctx.p() as u64) == 1);
        let mut prod = Poly::one(Level::Fp);
        for l in divisors(r) {
            prod = prod.mul(&cyclotomic(l, &ctx).unwrap(), &ctx).unwrap();
        }
        let xr = Poly::x_pow_minus_one(&ctx, Level::Fp, r as usize);
        prop_assert_eq!(&prod, &xr);
        let qr = cyclotomic(r, &ctx).unwrap();
        for l in divisors(r).into_iter().filter(|&l| l < r) {
            let quot = xr.exact_div(&Poly::x_pow_minus_one(&ctx, Level::Fp, l as usize), &ctx).unwrap();
            prop_assert!(qr.divides(&quot, &ctx).unwrap());
        }
    }

    #[test]
    fn cayley_hamilton_and_conjugation(ctx in grid_field(), m in any::<[u32; 4]>(), p in any::<[u32; 4]>()) {
        let m = mat(&ctx, m);
        prop_assert!(m.verify_cayley_hamilton(&ctx));
        prop_assert!(m.minimal_poly(&ctx).divides(&m.char_poly(&ctx), &ctx).unwrap());
        let p = mat(&ctx, p);
        if p.is_invertible(&ctx) {
            prop_assert_eq!(m.conjugate(&p, &ctx).unwrap().char_poly(&ctx), m.char_poly(&ctx));
        }
    }

    #[test]
    fn invertible_iff_constant_term_nonzero(ctx in grid_field(), m in any::<[u32; 4]>()) {
        let m = mat(&ctx, m);
        prop_assert_eq!(m.is_invertible(&ctx), m.char_poly(&ctx).coeff(0) != 0);
        prop_assert_eq!(m.inverse(&ctx).is_ok(), m.is_invertible(&ctx));
    }

    #[test]
    fn conjugation_preserves_cycles(ctx in small_field(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = PermMap::random(ctx.clone(), s1);
        let g = PermMap::random(ctx.clone(), s2);
        let conj = g.compose(&f).unwrap().compose(&g.invert().unwrap()).unwrap();
        let (a, b) = (f.cycle_structure().unwrap(), conj.cycle_structure().unwrap());
        prop_assert!(a.same_shape(&b));
        prop_assert_eq!(a.total_points(), ctx.q2() as usize);
    }

    #[test]
    fn prime_order_permutations_are_regular(
        ctx in grid_field(),
        pick in any::<usize>(),
        count in any::<usize>(),
        seed in any::<u64>(),
    ) {
        let primes: Vec<u64> = [2, 3, 5, 7, 11, 13].into_iter().filter(|&r| r < ctx.q2() as u64).collect();
        let r = primes[pick % primes.len()] as usize;
        let count = 1 + count % (ctx.q2() as usize / r);
        let f = cycles_of_length(ctx.clone(), r, count, seed);
        prop_assert!(f.is_n_cycle_permutation(r as u64).unwrap());
        prop_assert!(!f.is_identity());
        prop_assert!(f.is_r_regular(r).unwrap());
        // conjugating keeps both properties
        let g = PermMap::random(ctx.clone(), seed ^ 1);
        let h = g.compose(&f).unwrap().compose(&g.invert().unwrap()).unwrap();
        prop_assert!(h.is_n_cycle_permutation(r as u64).unwrap() && h.is_r_regular(r).unwrap());
    }

    #[test]
    fn structured_sigma_is_cpp(ctx in grid_field(), pick in any::<usize>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let Some((h, kind, m)) = pick_cell(&ctx, pick) else { return Ok(()) };
        let q = ctx.q();
        let spec = ConstructionSpec::structured(ctx.clone(), h, kind, m, CoordPerm::random(q, s1), CoordPerm::random(q, s2)).unwrap();
        let sigma = build_sigma(&spec).unwrap();
        prop_assert!(sigma.is_permutation());
        prop_assert!(sigma.is_cpp());
        if ctx.p() == 2 {
            prop_assert_eq!(sigma.cycle_structure().unwrap().fixed_points, 1);
        }
        if spec.inverse_paired() {
            prop_assert!(sigma.cycle_structure().unwrap().same_shape(&spec.regular_cycle_structure()));
        }
    }

    #[test]
    fn paired_sigma_is_regular(ctx in grid_field(), pick in any::<usize>(), seed in any::<u64>()) {
        let Some((h, kind, m)) = pick_cell(&ctx, pick) else { return Ok(()) };
        let a1 = CoordPerm::random(ctx.q(), seed);
        let a2 = a1.inverse();
        let spec = ConstructionSpec::structured(ctx.clone(), h, kind, m, a1, a2).unwrap();
        let sigma = build_sigma(&spec).unwrap();
        prop_assert!(sigma.cycle_structure().unwrap().same_shape(&spec.regular_cycle_structure()));
        prop_assert!(sigma.is_r_regular(h.r() as usize).unwrap());
    }

    #[test]
    fn additive_pairing_matches_shifted_matrix(
        ctx in grid_field(),
        pick in any::<usize>(),
        c in any::<u32>(),
        frobenius in any::<bool>(),
    ) {
        let Some((h, kind, m)) = pick_cell(&ctx, pick) else { return Ok(()) };
        let a1 = if frobenius {
            CoordPerm::monomial(&ctx, ctx.p() as u64).unwrap()
        } else {
            CoordPerm::scaling(&ctx, 1 + c % (ctx.q() - 1)).unwrap()
        };
        prop_assert!(a1.is_additive(&ctx));
        let a2 = a1.inverse();
        let spec = ConstructionSpec::structured(ctx.clone(), h, kind, m, a1, a2).unwrap();
        let shifted = build_sigma(&spec).unwrap().plus_identity();
        let m1 = PermMap::from_matrix(ctx.clone(), &shifted_matrix(&h, &ctx));
        prop_assert!(shifted.cycle_structure().unwrap().same_shape(&m1.cycle_structure().unwrap()));
    }

    #[test]
    fn general_with_linear_taus(ctx in grid_field(), pick in any::<usize>(), p in any::<[u32; 4]>(), type5 in any::<bool>()) {
        let Some((h, _, m)) = pick_cell(&ctx, pick) else { return Ok(()) };
        let p = mat(&ctx, p);
        prop_assume!(p.is_invertible(&ctx));
        let matrix = if type5 { matrix_type5(&h, m, &ctx) } else { matrix_type4(&h, m, &ctx) }.unwrap();
        let tau1 = PermMap::from_matrix(ctx.clone(), &p);
        let tau2 = PermMap::from_matrix(ctx.clone(), &p.inverse(&ctx).unwrap());
        let spec = ConstructionSpec::general(ctx.clone(), h, matrix, tau1, tau2).unwrap();
        let claims = spec.claims();
        prop_assert!(claims.pp && claims.cpp && claims.r_regular);
        let sigma = build_sigma(&spec).unwrap();
        prop_assert!(sigma.is_cpp());
        prop_assert!(sigma.is_r_regular(h.r() as usize).unwrap());
        prop_assert!(sigma.cycle_structure().unwrap().same_shape(&spec.regular_cycle_structure()));
    }

    #[test]
    fn companion_maps_fix_only_zero(ctx in grid_field(), pick in any::<usize>()) {
        let Some((h, kind, m)) = pick_cell(&ctx, pick) else { return Ok(()) };
        let matrix = match kind {
            VariantKind::Type5 => matrix_type5(&h, m, &ctx),
            _ => matrix_type4(&h, m, &ctx),
        }
        .unwrap();
        let f = PermMap::from_matrix(ctx.clone(), &matrix);
        prop_assert_eq!(f.cycle_structure().unwrap().fixed_points, 1);
    }

    #[test]
    fn interpolation_matches_character_sums(ctx in small_field(), seed in any::<u64>(), permute in any::<bool>()) {
        let table = if permute {
            PermMap::random(ctx.clone(), seed).into_table()
        } else {
            // an arbitrary total map
            let noise = PermMap::random(ctx.clone(), seed).into_table();
            noise.iter().map(|&v| v / 2).collect()
        };
        let f = PermMap::from_table(ctx.clone(), table.clone()).unwrap();
        let poly = to_univariate(&f).unwrap();
        let oracle = character_sum_coeffs(&ctx, &table);
        prop_assert_eq!(poly.coeffs(), oracle.as_slice());
    }

    #[test]
    fn linear_maps_have_linearised_forms(ctx in grid_field(), m in any::<[u32; 4]>()) {
        let f = PermMap::from_matrix(ctx.clone(), &mat(&ctx, m));
        prop_assert!(f.is_additive());
        let poly = to_univariate(&f).unwrap();
        let q = ctx.q() as usize;
        for (e, &c) in poly.coeffs().iter().enumerate() {
            prop_assert!(c == 0 || e == 1 || e == q, "monomial x^{}", e);
        }
    }

    #[test]
    fn feistel_in_characteristic_two(k in 1u32..=3, seed in any::<u64>()) {
        let ctx = field(2, k);
        let p_fn = CoordPerm::random(ctx.q(), seed);
        let f = feistel_omega(ctx, p_fn.table()).unwrap();
        prop_assert!(f.is_cpp());
        prop_assert_eq!(f.cycle_structure().unwrap().fixed_points, 1);
    }
}

#[test]
fn frobenius_exhaustive() {
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (3, 2)] {
        let ctx = field(p, k);
        let fr: Vec<_> = (0..ctx.q2()).map(|x| ctx.frobenius(elt(&ctx, Level::Fq2, x)).unwrap()).collect();
        for a in 0..ctx.q2() {
            for b in 0..ctx.q2() {
                let (ea, eb) = (elt(&ctx, Level::Fq2, a), elt(&ctx, Level::Fq2, b));
                let s = ctx.add(ea, eb).unwrap().index() as usize;
                let m = ctx.mul(ea, eb).unwrap().index() as usize;
                assert_eq!(fr[s], ctx.add(fr[a as usize], fr[b as usize]).unwrap());
                assert_eq!(fr[m], ctx.mul(fr[a as usize], fr[b as usize]).unwrap());
            }
        }
    }
}

#[test]
fn trace_is_surjective() {
    for (p, k) in GRID {
        let ctx = field(p, k);
        let image: BTreeSet<u32> =
            (0..ctx.q2()).map(|x| ctx.trace_q2_to_q(elt(&ctx, Level::Fq2, x)).unwrap().index()).collect();
        assert_eq!(image.len(), ctx.q() as usize, "q = {}", ctx.q());
    }
}

/// Degree profile of `Q_r` over `F_q` by listing every monic divisor of each
/// degree up to `d` and testing it for irreducibility.
#[test]
fn equal_degree_pattern_by_enumeration() {
    const BUDGET: u64 = 4096;
    let mut checked = 0;
    for (p, k) in GRID.into_iter().chain([(2, 1), (3, 1)]) {
        let ctx = field(p, k);
        let q = ctx.q() as u64;
        for r in (2..=30u64).filter(|&r| gcd(r, p as u64) == 1) {
            let d = multiplicative_order(q, r).unwrap() as u32;
            if q.checked_pow(d).is_none_or(|n| n > BUDGET) {
                continue;
            }
            let qr = cyclotomic(r, &ctx).unwrap().lift(Level::Fq).unwrap();
            let mut found = Vec::new();
            for deg in 1..=d as usize {
                let mut n_irr = 0;
                for n in 0..q.pow(deg as u32) {
                    let mut coeffs: Vec<u32> = (0..deg).map(|i| ((n / q.pow(i as u32)) % q) as u32).collect();
                    coeffs.push(1);
                    let g = Poly::new(&ctx, Level::Fq, coeffs).unwrap();
                    if g.divides(&qr, &ctx).unwrap() && is_irreducible(&g, &ctx).unwrap() {
                        n_irr += 1;
                    }
                }
                if n_irr > 0 {
                    found.push((deg, n_irr));
                }
            }
            assert_eq!(qr.distinct_degree_counts(&ctx).unwrap(), found, "q={q} r={r}");
            checked += 1;
        }
    }
    assert!(checked > 50);
}

/// Every monic quadratic over `F_q` dividing `Q_r`, counted by brute force.
#[test]
fn quadratic_factors_by_scan() {
    for (p, k) in GRID {
        let ctx = field(p, k);
        let q = ctx.q();
        for r in admissible_r(&ctx) {
            let qr = cyclotomic(r, &ctx).unwrap().lift(Level::Fq).unwrap();
            let mut scanned = BTreeSet::new();
            for h1 in 0..q {
                for h0 in 0..q {
                    let g = Poly::new(&ctx, Level::Fq, vec![h0, h1, 1]).unwrap();
                    if g.divides(&qr, &ctx).unwrap() {
                        scanned.insert((h1, h0));
                    }
                }
            }
            let listed: BTreeSet<_> =
                all_quadratic_factors(r, &ctx).unwrap().iter().map(|h| (h.h1(), h.h0())).collect();
            assert_eq!(listed, scanned, "q={q} r={r}");
            for h in all_quadratic_factors(r, &ctx).unwrap() {
                let g = h.poly();
                assert!(g.divides(&qr, &ctx).unwrap());
                for x in [0, 1, ctx.arith(Level::Fq).neg(1)] {
                    assert_ne!(g.eval(elt(&ctx, Level::Fq, x), &ctx).unwrap().index(), 0);
                }
            }
        }
    }
}
