//! Exhaustive verification suites.
//!
//! Each suite runs a family of checks for every size up to a bound and
//! reports one [`Check`] per (statement, size).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use crate::bijection::{
    pair_to_symmetric, pair_to_tailed_fish, phi, phi_inv, phi_left, phi_left_inv,
    symmetric_to_pair, tails_to_pair, MarkedFish, TreePair,
};
use crate::enumerate::{
    census, count_fish, count_left, count_left_refined, count_pairs, count_symmetric_by_size,
    count_symmetric_even_tails, count_symmetric_odd_tails, count_ternary, g_polynomial, gen_fish,
    gen_left, gen_ternary, Family, FishMethod, QPolynomial, Statistic,
};
use crate::fish::{Fish, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma2,
    Thm1,
    Thm2,
    Thm3,
    Tails,
    Symmetric,
    LeftTrees,
    Oracle,
    QPoly,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::Lemma2,
        Suite::Thm1,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Tails,
        Suite::Symmetric,
        Suite::LeftTrees,
        Suite::Oracle,
        Suite::QPoly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma2 => "lemma2",
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Tails => "tails",
            Suite::Symmetric => "symmetric",
            Suite::LeftTrees => "lefttrees",
            Suite::Oracle => "oracle",
            Suite::QPoly => "qpoly",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Suite, String> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}: {}", self.suite, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest size for which the growth oracle runs.
    pub oracle_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { oracle_cap: 8 }
    }
}

pub fn verify(suite: Suite, nmax: usize, options: VerifyOptions) -> Vec<Check> {
    match suite {
        Suite::All => Suite::EACH
            .into_iter()
            .flat_map(|s| verify(s, nmax, options))
            .collect(),
        Suite::Lemma2 => (1..=nmax).map(lemma2).collect(),
        Suite::Thm1 => (1..=nmax).flat_map(thm1).collect(),
        Suite::Thm2 => (1..=nmax).flat_map(thm2).collect(),
        Suite::Thm3 => (1..=nmax).flat_map(|n| thm3(n, options)).collect(),
        Suite::Tails => (1..=nmax).flat_map(tails).collect(),
        Suite::Symmetric => (1..=nmax).flat_map(symmetric).collect(),
        Suite::LeftTrees => (1..=nmax).flat_map(left_trees).collect(),
        Suite::Oracle => (1..=nmax.min(options.oracle_cap)).map(oracle).collect(),
        Suite::QPoly => qpoly(nmax),
    }
}

fn check(suite: &'static str, name: String, pass: bool, detail: String) -> Check {
    Check {
        suite,
        name,
        pass,
        detail,
    }
}

fn fish_by_oracle_if_possible(n: usize, options: VerifyOptions) -> Vec<Fish> {
    let method = if n <= options.oracle_cap {
        FishMethod::GrowthOracle
    } else {
        FishMethod::ViaLeftTrees
    };
    gen_fish(n, method)
}

pub fn lemma2(n: usize) -> Check {
    let fish = gen_fish(n, FishMethod::ViaLeftTrees);
    let bad = fish
        .par_iter()
        .filter(|f| f.stem_cells().len() != n || f.branch_cells().len() + 1 != f.tails().len())
        .count();
    check(
        "lemma2",
        format!("n={n}"),
        bad == 0,
        format!(
            "{} fish, {} with #stem != size or #branch != #tails - 1",
            fish.len(),
            bad
        ),
    )
}

pub fn thm1(n: usize) -> Vec<Check> {
    let trees = gen_ternary(n);
    let images: Vec<(Vec<u8>, usize, bool, bool)> = trees
        .par_iter()
        .map(|t| {
            let m = phi(t).expect("nonempty tree");
            let alpha = t.abscissas().expect("nonempty");
            let odd = alpha.iter().filter(|a| *a % 2 != 0).count();
            let stats_ok = m.fish.strip_count(Orientation::Descending) == odd + 1
                && m.fish.strip_count(Orientation::Ascending) == n - odd;
            let inverse_ok = phi_inv(&m).as_ref() == Ok(t);
            (
                m.fish.canonical_code(),
                m.mark_index(),
                stats_ok,
                inverse_ok,
            )
        })
        .collect();
    let image: HashSet<(Vec<u8>, usize)> =
        images.iter().map(|(c, i, _, _)| (c.clone(), *i)).collect();
    let marked: HashSet<(Vec<u8>, usize)> = gen_fish(n, FishMethod::GrowthOracle)
        .iter()
        .flat_map(|f| {
            let code = f.canonical_code();
            (0..f.strip_count(Orientation::Descending)).map(move |i| (code.clone(), i))
        })
        .collect();
    let stats_bad = images.iter().filter(|x| !x.2).count();
    let inverse_bad = images.iter().filter(|x| !x.3).count();
    vec![
        check(
            "thm1",
            format!("n={n} bijection"),
            image.len() == trees.len() && image == marked,
            format!(
                "|T_n| = {}, distinct images = {}, marked fish = {}",
                trees.len(),
                image.len(),
                marked.len()
            ),
        ),
        check(
            "thm1",
            format!("n={n} strips"),
            stats_bad == 0,
            format!("{stats_bad} trees violate desc = odd + 1, asc = even"),
        ),
        check(
            "thm1",
            format!("n={n} inverse"),
            inverse_bad == 0,
            format!("{inverse_bad} trees with phi_inv(phi(t)) != t"),
        ),
    ]
}

pub fn thm2(n: usize) -> Vec<Check> {
    let fish = census(Family::Fish, n, &[Statistic::DescStrips]).expect("fish statistic");
    let trees = census(Family::Ternary, n, &[Statistic::OddAbscissa]).expect("tree statistic");
    let f_n = fish.total();
    let t_n = trees.total();
    let mut out = vec![check(
        "thm2",
        format!("n={n}"),
        &f_n * (n as u64 + 1) == &t_n * 2u32,
        format!(
            "(n+1)|F_n| = {} , 2|T_n| = {}",
            &f_n * (n as u64 + 1),
            &t_n * 2u32
        ),
    )];
    let get =
        |m: &BTreeMap<Vec<i64>, BigUint>, k: i64| m.get(&vec![k]).cloned().unwrap_or_default();
    let mut bad = Vec::new();
    for l in 0..n as i64 {
        let f = get(&fish.counts, l + 1);
        let lhs1 = &f * (l as u64 + 1);
        let rhs1 = get(&trees.counts, l);
        let lhs2 = &f * (n as u64 - l as u64);
        let rhs2 = get(&trees.counts, n as i64 - l - 1);
        if lhs1 != rhs1 || lhs2 != rhs2 {
            bad.push(l);
        }
    }
    out.push(check(
        "thm2",
        format!("n={n} refined"),
        bad.is_empty(),
        format!("{} values of l checked, failing: {:?}", n, bad),
    ));
    out
}

pub fn thm3(n: usize, options: VerifyOptions) -> Vec<Check> {
    let trees = gen_left(n);
    let tree_bad = trees
        .par_iter()
        .filter(|t| {
            phi_left(t)
                .and_then(|f| phi_left_inv(&f))
                .map_or(true, |back| back != **t)
        })
        .count();
    let fish = fish_by_oracle_if_possible(n, options);
    let fish_bad = fish
        .par_iter()
        .filter(|f| {
            phi_left_inv(f)
                .and_then(|t| phi_left(&t))
                .map_or(true, |back| back != **f)
        })
        .count();
    let fish_census = census(
        Family::Fish,
        n,
        &[
            Statistic::DescStrips,
            Statistic::AscStrips,
            Statistic::JawLen,
        ],
    )
    .expect("fish statistics");
    let tree_census = census(
        Family::LeftTrees,
        n,
        &[
            Statistic::OddAbscissa,
            Statistic::EvenAbscissa,
            Statistic::ZeroAbscissa,
        ],
    )
    .expect("tree statistics");
    let shifted = tree_census.map_keys(|k| vec![k[0] + 1, k[1], k[2]]);
    vec![
        check(
            "thm3",
            format!("n={n} left trees"),
            tree_bad == 0,
            format!("{} trees, {} fail the round trip", trees.len(), tree_bad),
        ),
        check(
            "thm3",
            format!("n={n} fish"),
            fish_bad == 0 && fish.len() == trees.len(),
            format!("{} fish, {} fail the round trip", fish.len(), fish_bad),
        ),
        check(
            "thm3",
            format!("n={n} census"),
            fish_census.counts == shifted,
            format!(
                "(desc, asc, jaw) vs (odd + 1, even, zero) over {} tuples",
                fish_census.counts.len()
            ),
        ),
    ]
}

pub fn tails(n: usize) -> Vec<Check> {
    let fish = gen_fish(n, FishMethod::ViaLeftTrees);
    let marked: Vec<(&Fish, crate::fish::CellId)> = fish
        .iter()
        .flat_map(|f| f.tails().into_iter().map(move |t| (f, t)))
        .collect();
    let results: Vec<(TreePair, bool, bool)> = marked
        .par_iter()
        .map(|&(f, t)| {
            let pair = tails_to_pair(f, t).expect("t is a tail");
            let back = pair_to_tailed_fish(&pair).expect("valid pair");
            let inverse_ok = pair.total() == n - 1 && back.0 == *f && back.1 == t;
            let (conj, map) = f.conjugate_with_map();
            let swap_ok = tails_to_pair(&conj, map[t.index()]).as_ref() == Ok(&pair.swap());
            (pair, inverse_ok, swap_ok)
        })
        .collect();
    let distinct: HashSet<&TreePair> = results.iter().map(|r| &r.0).collect();
    let expected = count_pairs(n as u64 - 1);
    let inverse_bad = results.iter().filter(|r| !r.1).count();
    let swap_bad = results.iter().filter(|r| !r.2).count();
    vec![
        check(
            "tails",
            format!("n={n} count"),
            BigUint::from(marked.len()) == expected && distinct.len() == marked.len(),
            format!(
                "sum of tails = {}, distinct pairs = {}, |(TxT)_(n-1)| = {}",
                marked.len(),
                distinct.len(),
                expected
            ),
        ),
        check(
            "tails",
            format!("n={n} inverse"),
            inverse_bad == 0,
            format!(
                "{inverse_bad} of {} marked fish fail the round trip",
                marked.len()
            ),
        ),
        check(
            "tails",
            format!("n={n} conjugation"),
            swap_bad == 0,
            format!("{swap_bad} of {} marked fish fail the swap", marked.len()),
        ),
    ]
}

pub fn symmetric(n: usize) -> Vec<Check> {
    let fish = gen_fish(n, FishMethod::ViaLeftTrees);
    let sym: Vec<&Fish> = fish.par_iter().filter(|f| f.is_symmetric()).collect();
    let expected = count_symmetric_by_size(n as u64);
    let mut out = vec![check(
        "symmetric",
        format!("n={n} count"),
        BigUint::from(sym.len()) == expected,
        format!("{} symmetric fish, expected {}", sym.len(), expected),
    )];
    if n.is_multiple_of(2) {
        return out;
    }
    let half = (n as u64 - 1) / 2;
    let odd = sym.iter().filter(|f| f.tails().len() % 2 == 1).count();
    let even = sym.len() - odd;
    out.push(check(
        "symmetric",
        format!("n={n} tails parity"),
        BigUint::from(odd) == count_symmetric_odd_tails(half)
            && BigUint::from(even) == count_symmetric_even_tails(half),
        format!(
            "odd/even tails {odd}/{even}, expected {}/{}",
            count_symmetric_odd_tails(half),
            count_symmetric_even_tails(half)
        ),
    ));
    let pairs: Vec<Option<TreePair>> = sym
        .par_iter()
        .map(|f| {
            let pair = symmetric_to_pair(f).ok()?;
            let ok = pair.total() as u64 == half
                && pair_to_symmetric(&pair).ok().as_ref() == Some(*f)
                && pair.second.is_empty() == (f.tails().len() % 2 == 1);
            ok.then_some(pair)
        })
        .collect();
    let bad = pairs.iter().filter(|p| p.is_none()).count();
    let distinct: HashSet<&TreePair> = pairs.iter().flatten().collect();
    out.push(check(
        "symmetric",
        format!("n={n} bijection"),
        bad == 0 && BigUint::from(distinct.len()) == count_pairs(half),
        format!(
            "{bad} round-trip failures, {} distinct pairs, |(TxT)_{half}| = {}",
            distinct.len(),
            count_pairs(half)
        ),
    ));
    out
}

pub fn left_trees(n: usize) -> Vec<Check> {
    let left = census(
        Family::LeftTrees,
        n,
        &[Statistic::EvenAbscissa, Statistic::OddAbscissa],
    )
    .expect("tree statistics");
    let mut refined_bad = Vec::new();
    for i in 0..n as i64 {
        let j = n as i64 - 1 - i;
        let seen = left
            .counts
            .get(&vec![i + 1, j])
            .cloned()
            .unwrap_or_default();
        if seen != count_left_refined(i as u64, j as u64) {
            refined_bad.push((i, j));
        }
    }
    let t_n = count_ternary(n as u64);
    let lt_n = left.total();
    let odd_marks = left.weighted_sum(|k| k[1]);
    let even_marks = left.weighted_sum(|k| k[0]);
    vec![
        check(
            "lefttrees",
            format!("n={n} count"),
            lt_n == count_left(n as u64),
            format!("{} left trees, formula {}", lt_n, count_left(n as u64)),
        ),
        check(
            "lefttrees",
            format!("n={n} refined"),
            refined_bad.is_empty(),
            format!("(even - 1, odd) classes failing: {refined_bad:?}"),
        ),
        check(
            "lefttrees",
            format!("n={n} marked nodes"),
            odd_marks == &t_n - &lt_n && even_marks == t_n,
            format!(
                "odd-marked {} = |T_n| - |LT_n| = {}, even-marked {} = |T_n| = {}",
                odd_marks,
                &t_n - &lt_n,
                even_marks,
                t_n
            ),
        ),
    ]
}

pub fn oracle(n: usize) -> Check {
    let via: Vec<Vec<u8>> = gen_fish(n, FishMethod::ViaLeftTrees)
        .iter()
        .map(Fish::canonical_code)
        .collect();
    let grown: Vec<Vec<u8>> = gen_fish(n, FishMethod::GrowthOracle)
        .iter()
        .map(Fish::canonical_code)
        .collect();
    let a: HashSet<&Vec<u8>> = via.iter().collect();
    let b: HashSet<&Vec<u8>> = grown.iter().collect();
    check(
        "oracle",
        format!("n={n}"),
        a == b && a.len() == via.len(),
        format!("{} == {}", a.len(), b.len()),
    )
}

/// Coefficients of the first four q-polynomials, as published.
const LISTED_G: [&[i64]; 4] = [
    &[1],
    &[1, 0, 0, 1],
    &[1, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1],
    &[
        1, 0, 0, 1, 1, 1, 1, 1, 2, 2, 1, 1, 2, 2, 1, 1, 1, 1, 1, 0, 0, 1,
    ],
];

/// Values at q = −1 for n = 1..11, as published.
const LISTED_AT_MINUS_ONE: [i64; 11] = [1, 0, 2, 0, 7, 0, 30, 0, 143, 0, 728];

pub fn qpoly(nmax: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        let g = match g_polynomial(n) {
            Ok(g) => g,
            Err(e) => {
                out.push(check("qpoly", format!("n={n}"), false, e.to_string()));
                continue;
            }
        };
        if let Some(listed) = LISTED_G.get(n - 1) {
            let expected = QPolynomial::from_i64s(listed);
            out.push(check(
                "qpoly",
                format!("n={n} listed"),
                g == expected,
                format!("G_{n} = {g}"),
            ));
        }
        let at_one = g.eval(1);
        let fish = BigInt::from(count_fish(n as u64));
        out.push(check(
            "qpoly",
            format!("n={n} q=1"),
            at_one == fish,
            format!("G_{n}(1) = {at_one}, |F_{n}| = {fish}"),
        ));
        let at_minus = g.eval(-1);
        let expected = match LISTED_AT_MINUS_ONE.get(n - 1) {
            Some(&v) => BigInt::from(v),
            None => BigInt::from(count_symmetric_by_size(n as u64)),
        };
        out.push(check(
            "qpoly",
            format!("n={n} q=-1"),
            at_minus == expected,
            format!("G_{n}(-1) = {at_minus}, expected {expected}"),
        ));
    }
    out
}

/// Every marking of every fish of size `n`, for callers that need the set
/// explicitly.
pub fn all_marked_fish(n: usize) -> Vec<MarkedFish> {
    gen_fish(n, FishMethod::ViaLeftTrees)
        .iter()
        .flat_map(MarkedFish::all)
        .collect()
}
