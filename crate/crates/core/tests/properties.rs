use proptest::prelude::*;
use qclust::bases::{indices_up_to, BasisContext, Order, StdExpansion};
use qclust::forms::{deformed_cartan, invert_series, n_form, quantized_rsd, FormKind, HeightFn};
use qclust::infinity::{block_equations, SeedChain};
use qclust::linalg;
use qclust::roots::{apply_word, nu_and_h, phi_xi, positive_roots, simple_root};
use qclust::scalar::Int;
use qclust::seed::{dominance_leq, mutation_path_failures, validate};
use qclust::tsystems::interval_variables;
use qclust::*;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, OnceLock};

// ---------------------------------------------------------------- qtorus

fn torus3(l: [i64; 3]) -> Arc<Torus> {
    let mut lam = LambdaForm::new();
    lam.set(1, 2, l[0]);
    lam.set(1, 3, l[1]);
    lam.set(2, 3, l[2]);
    Torus::new(&[1, 2, 3], &lam)
}

type RawTerm = ([i64; 3], i64, i64);

fn laurent(t: &Arc<Torus>, terms: &[RawTerm]) -> QLaurent {
    let it = terms.iter().map(|(e, h, c)| (ExpVec::from_pairs([(1, e[0]), (2, e[1]), (3, e[2])]), QScalar::mono(*h, *c)));
    QLaurent::from_terms(t, it).unwrap()
}

fn raw_terms() -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec((prop::array::uniform3(-2i64..=2), -3i64..=3, -3i64..=3), 0..5)
}

fn commutative_product(a: &BTreeMap<ExpVec, Int>, b: &BTreeMap<ExpVec, Int>) -> BTreeMap<ExpVec, Int> {
    let mut out: BTreeMap<ExpVec, Int> = BTreeMap::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            *out.entry(e1.add(e2)).or_default() += c1 * c2;
        }
    }
    out.retain(|_, c| *c != Int::ZERO);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisted_product_is_associative(l in prop::array::uniform3(-2i64..=2), a in raw_terms(), b in raw_terms(), c in raw_terms()) {
        let t = torus3(l);
        let (x, y, z) = (laurent(&t, &a), laurent(&t, &b), laurent(&t, &c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn bar_reverses_products(l in prop::array::uniform3(-2i64..=2), a in raw_terms(), b in raw_terms()) {
        let t = torus3(l);
        let (x, y) = (laurent(&t, &a), laurent(&t, &b));
        prop_assert_eq!((&x * &y).bar(), &y.bar() * &x.bar());
        prop_assert_eq!(x.bar().bar(), x);
    }

    #[test]
    fn q_one_is_the_commutative_product(l in prop::array::uniform3(-2i64..=2), a in raw_terms(), b in raw_terms()) {
        let t = torus3(l);
        let (x, y) = (laurent(&t, &a), laurent(&t, &b));
        prop_assert_eq!((&x * &y).at_q1(), commutative_product(&x.at_q1(), &y.at_q1()));
    }

    #[test]
    fn exact_division_inverts_multiplication(l in prop::array::uniform3(-2i64..=2), a in raw_terms(), b in raw_terms()) {
        let t = torus3(l);
        let (x, y) = (laurent(&t, &a), laurent(&t, &b));
        prop_assume!(!y.is_zero());
        prop_assert_eq!((&x * &y).exact_div(&y).unwrap(), x);
    }
}

// ---------------------------------------------------------------- seeds

fn a2_seed() -> &'static Seed {
    static S: OnceLock<Seed> = OnceLock::new();
    S.get_or_init(|| {
        let c = Cartan::of_type("A2").unwrap();
        let cox = SignedWord::parse("1,2").unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        quantized_rsd(&cox.repeat(3), &c, &xi, FormKind::N).unwrap()
    })
}

fn b3_seed() -> &'static Seed {
    static S: OnceLock<Seed> = OnceLock::new();
    S.get_or_init(|| {
        let c = Cartan::of_type("B3").unwrap();
        let cox = SignedWord::parse("2,1,3").unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        quantized_rsd(&cox.repeat(4), &c, &xi, FormKind::Underline).unwrap()
    })
}

fn pick(uf: &[Vid], raw: &[usize]) -> Vec<Vid> {
    raw.iter().map(|&r| uf[r % uf.len()]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn a2_mutation_paths(raw in prop::collection::vec(0usize..64, 0..=6)) {
        let sd = a2_seed();
        let seq = pick(&sd.unfrozen(), &raw);
        let bad = mutation_path_failures(sd, &seq);
        prop_assert!(bad.is_empty(), "{:?}: {:?}", seq, bad);
    }

    #[test]
    fn b3_mutation_paths(raw in prop::collection::vec(0usize..64, 0..=6)) {
        let sd = b3_seed();
        let seq = pick(&sd.unfrozen(), &raw);
        let bad = mutation_path_failures(sd, &seq);
        prop_assert!(bad.is_empty(), "{:?}: {:?}", seq, bad);
    }

    #[test]
    fn dominance_is_a_partial_order(
        m in prop::collection::vec(-3i64..=3, 12),
        n1 in prop::collection::vec(0i64..=2, 12),
        n2 in prop::collection::vec(0i64..=2, 12),
    ) {
        let sd = b3_seed();
        let uf = sd.unfrozen();
        let verts = sd.verts();
        let m = ExpVec::from_pairs(verts.iter().copied().zip(m.iter().copied()));
        let shift = |base: &ExpVec, n: &[i64]| {
            let mut e = base.clone();
            for (&k, &x) in uf.iter().zip(n) {
                for &v in verts {
                    e.add_at(v, sd.b(v, k) * x);
                }
            }
            e
        };
        let h1 = shift(&m, &n1);
        let h2 = shift(&h1, &n2);
        prop_assert!(dominance_leq(&m, &m, sd).unwrap());
        prop_assert!(dominance_leq(&h1, &m, sd).unwrap());
        prop_assert!(dominance_leq(&h2, &h1, sd).unwrap());
        prop_assert!(dominance_leq(&h2, &m, sd).unwrap());
        if n1[..uf.len()].iter().any(|&x| x != 0) {
            prop_assert!(!dominance_leq(&m, &h1, sd).unwrap());
        }
    }
}

// ---------------------------------------------------------------- words

fn cartan_and_word() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop_oneof![Just("A2"), Just("B3"), Just("G2"), Just("A3")].prop_flat_map(|ty| {
        let n = Cartan::of_type(ty).unwrap().rank() as i64;
        let letter = (1..=n, any::<bool>()).prop_map(|(a, s)| if s { a } else { -a });
        (Just(ty), prop::collection::vec(letter, 1..=9))
    })
}

fn cartan_and_positive_word() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop_oneof![Just("A2"), Just("B3"), Just("G2"), Just("A3")].prop_flat_map(|ty| {
        let n = Cartan::of_type(ty).unwrap().rank() as i64;
        (Just(ty), prop::collection::vec(1..=n, 1..=9))
    })
}

fn rational_rank(b: &[Vec<i64>], ncols: usize) -> usize {
    linalg::rank(&linalg::to_rat_matrix(b), ncols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn word_seeds_have_full_rank((ty, w) in cartan_and_word()) {
        let c = Cartan::of_type(ty).unwrap();
        let sd = build_rsd(&SignedWord::new(w).unwrap(), &c).unwrap();
        let n = sd.unfrozen().len();
        prop_assert_eq!(rational_rank(&sd.btilde(), n), n);
    }

    #[test]
    fn moves_are_realised_by_mutations((ty, w) in cartan_and_word(), picks in prop::collection::vec(0usize..16, 1..=4)) {
        let c = Cartan::of_type(ty).unwrap();
        let mut cur = SignedWord::new(w).unwrap();
        let start = build_rsd(&cur, &c).unwrap();
        let mut total = MutSeq::default();
        for p in picks {
            let flips: Vec<usize> = (1..cur.len()).filter(|&j| cur.eps(j) != cur.eps(j + 1)).collect();
            let mv = if flips.is_empty() || p % 3 == 0 { Move::LeftReflection } else { Move::Flip(flips[p % flips.len()]) };
            let (next, ms) = word_move(&cur, &mv, &c).unwrap();
            let direct = build_rsd(&cur, &c).unwrap().apply_seq(&ms).unwrap();
            prop_assert!(direct.same_data(&build_rsd(&next, &c).unwrap()), "{} --{:?}--> {}", cur, mv, next);
            total = total.then(&ms);
            cur = next;
        }
        let composed = start.apply_seq(&total).unwrap();
        prop_assert!(composed.same_data(&build_rsd(&cur, &c).unwrap()));
    }
}

// ---------------------------------------------------------------- T-systems

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interval_degrees_and_products((ty, w) in cartan_and_positive_word()) {
        let c = Cartan::of_type(ty).unwrap();
        let w = SignedWord::new(w).unwrap();
        let sd = build_rsd(&w, &c).unwrap();
        let tbl = interval_variables(&w, &c, &sd).unwrap();
        let entries: Vec<_> = tbl.entries().iter().collect();
        for (&(j, k), z) in &entries {
            prop_assert_eq!(tbl.degree(z).unwrap(), tbl.expected_degree(j, k));
        }
        for (&(j1, k1), z1) in entries.iter().take(6) {
            for (&(j2, k2), z2) in entries.iter().take(6) {
                let want = tbl.expected_degree(j1, k1).add(&tbl.expected_degree(j2, k2));
                prop_assert_eq!(tbl.degree(&(*z1 * *z2)).unwrap(), want);
            }
        }
    }

    #[test]
    fn prefix_intervals_embed((ty, w) in cartan_and_positive_word(), cut in 1usize..=9) {
        let c = Cartan::of_type(ty).unwrap();
        let w = SignedWord::new(w).unwrap();
        let k = cut.min(w.len());
        let sub = w.sub(1, k);
        let big = interval_variables(&w, &c, &build_rsd(&w, &c).unwrap()).unwrap();
        let small = interval_variables(&sub, &c, &build_rsd(&sub, &c).unwrap()).unwrap();
        for (&(j1, k1), z) in small.entries() {
            let x = big.get(j1, Pos::At(k1)).unwrap();
            // vertices above k do not occur in the prefix, so the exponent maps agree verbatim
            prop_assert_eq!(z.at_q1(), x.at_q1(), "W[{},{}]", j1, k1);
        }
    }
}

// ---------------------------------------------------------------- bases

fn a2_table() -> &'static qclust::tsystems::IntervalTable {
    static T: OnceLock<qclust::tsystems::IntervalTable> = OnceLock::new();
    T.get_or_init(|| {
        let c = Cartan::of_type("A2").unwrap();
        let cox = SignedWord::parse("1,2").unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        let w = SignedWord::parse("1,2,1").unwrap();
        let sd = quantized_rsd(&w, &c, &xi, FormKind::N).unwrap();
        interval_variables(&w, &c, &sd).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kl_elements_are_bar_invariant_and_unitriangular(pick in 0usize..1000, lex in any::<bool>()) {
        let tbl = a2_table();
        let idx = indices_up_to(tbl.word().len(), 2);
        let w = &idx[pick % idx.len()];
        let order = if lex { Order::Lex } else { Order::RevLex };
        let mut ctx = BasisContext::new(tbl).unwrap();
        let l = ctx.kl_element(w, order).unwrap();
        prop_assert_eq!(l.bar(), l.clone());
        let e = ctx.kl_expansion(w, order).unwrap();
        prop_assert!(e.get(w).is_one());
        for (v, c) in &e.coeffs {
            if v != w {
                prop_assert!(order.cmp(v, w).is_lt());
                prop_assert!(c.in_negative_ideal(), "{:?}: {}", v, c);
            }
        }
    }

    #[test]
    fn expansion_inverts_reconstruction(coeffs in prop::collection::vec((0usize..1000, -2i64..=2, -2i64..=2), 0..5)) {
        let tbl = a2_table();
        let idx = indices_up_to(tbl.word().len(), 2);
        let mut e = StdExpansion::default();
        for (p, h, c) in coeffs {
            let w = idx[p % idx.len()].clone();
            let s = e.coeffs.remove(&w).unwrap_or_default();
            let s = &s + &QScalar::mono(h, c);
            if !s.is_zero() {
                e.coeffs.insert(w, s);
            }
        }
        let mut ctx = BasisContext::new(tbl).unwrap();
        let z = ctx.reconstruct(&e).unwrap();
        prop_assert_eq!(ctx.expand(&z).unwrap(), e);
    }
}

// ---------------------------------------------------------------- roots

fn coxeter_ordering() -> impl Strategy<Value = (&'static str, Vec<i64>)> {
    prop_oneof![Just("A2"), Just("A3"), Just("B3"), Just("G2"), Just("D4")].prop_flat_map(|ty| {
        let n = Cartan::of_type(ty).unwrap().rank() as i64;
        (Just(ty), Just((1..=n).collect::<Vec<i64>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn coxeter_number_is_the_order_of_tau((ty, cw) in coxeter_ordering()) {
        let c = Cartan::of_type(ty).unwrap();
        let (nu, h) = nu_and_h(&c).unwrap();
        let np = positive_roots(&c).unwrap().len() as i64;
        prop_assert_eq!(2 * np, h * c.rank() as i64);
        for a in c.letters() {
            prop_assert_eq!(nu[(nu[(a - 1) as usize] - 1) as usize], a);
        }
        // τ has order exactly h on the root lattice
        let power = |k: i64| -> Vec<Vec<i64>> {
            let word: Vec<i64> = (0..k).flat_map(|_| cw.iter().copied()).collect();
            c.letters().map(|a| apply_word(&word, &simple_root(&c, a), &c)).collect()
        };
        let id: Vec<Vec<i64>> = c.letters().map(|a| simple_root(&c, a)).collect();
        prop_assert_eq!(power(h), id.clone());
        for k in 1..h {
            prop_assert_ne!(power(k), id.clone());
        }
    }

    #[test]
    fn phi_is_a_bijection_on_windows((ty, cw) in coxeter_ordering(), start in -12i64..12) {
        let c = Cartan::of_type(ty).unwrap();
        let cox = SignedWord::new(cw).unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        let (_, h) = nu_and_h(&c).unwrap();
        let np = positive_roots(&c).unwrap().len();
        // nodes p in [start, start + 2h) give each (root, level) at most once, 2|Φ⁺| in total
        let mut seen = BTreeSet::new();
        for b in c.letters() {
            for p in (start..start + 2 * h).filter(|p| (p - xi.get(b)).rem_euclid(2) == 0) {
                prop_assert!(seen.insert(phi_xi(b, p, &xi, &cox, &c).unwrap()));
            }
        }
        prop_assert_eq!(seen.len(), 2 * np);
    }
}

// ---------------------------------------------------------------- forms

fn inverse_series(ty: &str) -> &'static (Cartan, qclust::forms::SeriesMatrix, Vec<i64>, i64) {
    static S: OnceLock<BTreeMap<String, (Cartan, qclust::forms::SeriesMatrix, Vec<i64>, i64)>> = OnceLock::new();
    let all = S.get_or_init(|| {
        ["A2", "A3", "B3", "G2", "D4"]
            .iter()
            .map(|&t| {
                let c = Cartan::of_type(t).unwrap();
                let (nu, h) = nu_and_h(&c).unwrap();
                let s = invert_series(&deformed_cartan(&c), 60).unwrap();
                (t.to_string(), (c, s, nu, h))
            })
            .collect()
    });
    &all[ty]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_series_is_twisted_periodic(ty in prop_oneof![Just("A2"), Just("A3"), Just("B3"), Just("G2"), Just("D4")], m in 1i64..=36, a in 0usize..4, b in 0usize..4) {
        let (c, s, nu, h) = inverse_series(ty);
        let n = c.rank();
        let (a, b) = (a % n, b % n);
        prop_assume!(m + 2 * h <= 60);
        let nb = (nu[b] - 1) as usize;
        prop_assert_eq!(s.get(a, b, m + 2 * h).unwrap(), s.get(a, b, m).unwrap());
        prop_assert_eq!(s.get(a, b, m + h).unwrap(), -s.get(a, nb, m).unwrap());
    }

    #[test]
    fn n_form_is_skew(ty in prop_oneof![Just("A2"), Just("B3"), Just("G2")], a in 1i64..=3, b in 1i64..=3, p in -12i64..=12, s in -12i64..=12) {
        let (c, ct, _, _) = inverse_series(ty);
        let n = c.rank() as i64;
        let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
        prop_assume!((p - s).abs() <= 24);
        prop_assert_eq!(n_form(a, p, b, s, ct).unwrap(), -n_form(b, s, a, p, ct).unwrap());
    }

    #[test]
    fn forms_quantize_every_prefix((ty, cw) in coxeter_ordering(), len in 1usize..=12) {
        let c = Cartan::of_type(ty).unwrap();
        let cox = SignedWord::new(cw).unwrap();
        let xi = HeightFn::from_coxeter(&c, &cox).unwrap();
        let w = cox.repeat(3).sub(1, len.min(3 * c.rank()));
        let kind = if c.syms().iter().all(|&d| d == c.syms()[0]) { FormKind::N } else { FormKind::Underline };
        let sd = quantized_rsd(&w, &c, &xi, kind).unwrap();
        prop_assert!(validate(&sd).is_valid());
    }
}

// ---------------------------------------------------------------- infinity

fn dsd_levels() -> &'static [Arc<Seed>] {
    static L: OnceLock<Vec<Arc<Seed>>> = OnceLock::new();
    L.get_or_init(|| {
        let c = Cartan::of_type("A2").unwrap();
        let cox = SignedWord::parse("1,2").unwrap();
        let ch = SeedChain::dsd_ghl(&c, &cox).unwrap();
        (0..3).map(|i| ch.level(i).unwrap()).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn perturbing_new_entries_breaks_the_extension(s in 0usize..2, i in 0usize..64, j in 0usize..64, delta in prop_oneof![-3i64..=-1, 1i64..=3]) {
        let levels = dsd_levels();
        let (sub, sup) = (&levels[s], &levels[s + 1]);
        let i1 = sub.unfrozen();
        let i2 = sub.frozen();
        let i3: Vec<Vid> = sup.verts().iter().copied().filter(|v| !sub.contains(*v)).collect();
        let lam = sup.lambda_form().unwrap();
        let k = i1[0];
        let alpha = -(sup.verts().iter().map(|&t| lam.get(k, t) * sup.b(t, k) * sup.d(k)).sum::<i64>());
        prop_assert_eq!(block_equations(sup, &i1, &i2, &i3, &lam, alpha), [true; 4]);
        let u = i3[i % i3.len()];
        let v = sup.verts()[j % sup.len()];
        prop_assume!(u != v);
        let mut bad = lam.clone();
        bad.set(u, v, lam.get(u, v) + delta);
        prop_assert_ne!(block_equations(sup, &i1, &i2, &i3, &bad, alpha), [true; 4]);
    }
}
