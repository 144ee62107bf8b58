//! Seeded batch property suites. Each suite checks a family of identities
//! against the brute-force oracles and reports one [`Report`] per property.
//!
//! Random instances come from `ChaCha8Rng::seed_from_u64(seed)` with the
//! stream set to the prime under test (stream 0 for suites that mix primes),
//! so a given seed reproduces the same instances on every platform.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{qint, qint_at_power, CycNum};
use crate::dimensions::{
    ad, ad_by_summands, ad_rep, delta, delta_content, gd, length, padic_dimension, padic_dimension_of,
    recover_jordan_content, sd_at_least, series_from_digits,
};
use crate::fusion::{
    fpdim, frobenius, frobenius_collapse, frobenius_enhanced, frobenius_type, fuse, fuse_simples, mckay_graph,
    rank, FrobeniusType, VerObject, VerPair,
};
use crate::modrep::{
    alt_power_ver, alt_power_ver_by_summands, fr_plus, jordan_type_of, semisimplify_rep, skew_image, sym_power,
    tensor, wedge_power, CyclicRep, JordanType,
};
use crate::partitions::{
    ell_p, greedy_to_rho, is_p_regular, james_condition, james_envelope, p_core, rho, sasha_bound, Partition,
};
use crate::{check_prime, Error, Result};

/// Outcome of one property over a batch of instances.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub property: String,
    pub instances: u64,
    pub failures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    fn new(property: impl Into<String>) -> Self {
        Report { property: property.into(), instances: 0, failures: Vec::new(), note: None }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance; library errors count as failures.
    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        self.instances += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(describe()),
            Err(e) => self.failures.push(format!("{}: {e}", describe())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub reports: Vec<Report>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    pub fn failure_count(&self) -> usize {
        self.reports.iter().map(|r| r.failures.len()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    FusionOracle,
    FpdimHom,
    Delta,
    Alt,
    Padic,
    Frobenius,
    FrPlus,
    Sd,
    Partitions,
    Mckay,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::FusionOracle,
        Suite::FpdimHom,
        Suite::Delta,
        Suite::Alt,
        Suite::Padic,
        Suite::Frobenius,
        Suite::FrPlus,
        Suite::Sd,
        Suite::Partitions,
        Suite::Mckay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FusionOracle => "fusion-oracle",
            Suite::FpdimHom => "fpdim-hom",
            Suite::Delta => "finti",
            Suite::Alt => "alt",
            Suite::Padic => "padic",
            Suite::Frobenius => "frobenius",
            Suite::FrPlus => "fr-plus",
            Suite::Sd => "sd",
            Suite::Partitions => "partitions",
            Suite::Mckay => "mckay",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

/// Knobs shared by every suite. `primes` and `instances` override the
/// suite's defaults when set.
#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub instances: Option<u64>,
    pub primes: Option<Vec<u32>>,
    pub cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, instances: None, primes: None, cap: crate::DEFAULT_CAP }
    }
}

impl Config {
    fn primes(&self, default: &[u32]) -> Result<Vec<u32>> {
        match &self.primes {
            Some(list) => list.iter().map(|&p| check_prime(p)).collect(),
            None => Ok(default.to_vec()),
        }
    }

    fn instances(&self, default: u64) -> u64 {
        self.instances.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

pub fn run(suite: Suite, cfg: &Config) -> Result<SuiteReport> {
    let reports = match suite {
        Suite::FusionOracle => fusion_oracle(cfg)?,
        Suite::FpdimHom => fpdim_hom(cfg)?,
        Suite::Delta => growth_rate(cfg)?,
        Suite::Alt => alt(cfg)?,
        Suite::Padic => padic(cfg)?,
        Suite::Frobenius => frobenius_suite(cfg)?,
        Suite::FrPlus => iterated_fr_plus(cfg)?,
        Suite::Sd => sd(cfg)?,
        Suite::Partitions => partition_suite(cfg)?,
        Suite::Mckay => mckay(cfg)?,
    };
    Ok(SuiteReport { suite: suite.name().into(), seed: cfg.seed, reports })
}

pub fn run_all(cfg: &Config) -> Result<Vec<SuiteReport>> {
    Suite::ALL.into_iter().map(|s| run(s, cfg)).collect()
}

/// A nonzero object with multiplicities in `0..=2` and `dim X^♯ ≤ max_lift`.
pub fn random_object<R: Rng + ?Sized>(rng: &mut R, p: u32, max_lift: u64) -> VerObject {
    let n = rank(p);
    loop {
        let mult: Vec<u64> = (0..n).map(|_| if rng.gen_bool(0.4) { rng.gen_range(1..=2) } else { 0 }).collect();
        let x = VerObject::new(p, mult).expect("valid p");
        if !x.is_zero() && x.lift_dim() <= max_lift {
            return x;
        }
    }
}

/// A nonzero Jordan type of dimension at most `max_dim`, projective blocks allowed.
pub fn random_jordan_type<R: Rng + ?Sized>(rng: &mut R, p: u32, max_dim: u64) -> JordanType {
    let mut blocks = vec![0u64; p as usize];
    let target = rng.gen_range(1..=max_dim);
    let mut dim = 0;
    while dim < target {
        let size = rng.gen_range(1..=(p as u64).min(target - dim));
        blocks[size as usize - 1] += 1;
        dim += size;
    }
    JordanType::new(p, blocks).expect("valid p")
}

/// Every Jordan type of dimension `1..=max_dim`.
fn all_jordan_types(p: u32, max_dim: u64) -> Vec<JordanType> {
    fn go(p: u32, rest: u64, largest: u64, blocks: &mut Vec<u64>, out: &mut Vec<JordanType>) {
        if rest == 0 {
            out.push(JordanType::new(p, blocks.clone()).expect("valid p"));
            return;
        }
        for s in (1..=rest.min(largest)).rev() {
            blocks[s as usize - 1] += 1;
            go(p, rest - s, s, blocks, out);
            blocks[s as usize - 1] -= 1;
        }
    }
    let mut out = Vec::new();
    for d in 1..=max_dim {
        go(p, d, p as u64, &mut vec![0; p as usize], &mut out);
    }
    out
}

fn simple(p: u32, i: usize) -> VerObject {
    VerObject::simple(p, i).expect("index in range")
}

fn fusion_oracle(cfg: &Config) -> Result<Vec<Report>> {
    let mut simples = Report::new("semisimplify(lift L_i ⊗ lift L_j) = L_i ⊗ L_j");
    let mut random = Report::new("semisimplify(lift X ⊗ lift Y) = X ⊗ Y for random X, Y (conjugated lifts)");
    for p in cfg.primes(&[2, 3, 5, 7])? {
        for i in 1..=rank(p) {
            for j in 1..=rank(p) {
                let outcome = (|| {
                    let t = tensor(&CyclicRep::lift(&simple(p, i))?, &CyclicRep::lift(&simple(p, j))?, cfg.cap)?;
                    Ok(semisimplify_rep(&t) == fuse_simples(p, i, j)?)
                })();
                simples.record(outcome, || format!("p={p} L{i} ⊗ L{j}"));
            }
        }
        let mut rng = cfg.rng(p as u64);
        for _ in 0..cfg.instances(50) {
            let (x, y) = (random_object(&mut rng, p, 8), random_object(&mut rng, p, 8));
            let lx = CyclicRep::lift(&x)?.random_conjugate(&mut rng);
            let ly = CyclicRep::lift(&y)?.random_conjugate(&mut rng);
            let outcome = tensor(&lx, &ly, cfg.cap).and_then(|t| Ok(semisimplify_rep(&t) == fuse(&x, &y)?));
            random.record(outcome, || format!("p={p} X={x} Y={y}"));
        }
    }
    Ok(vec![simples, random])
}

fn fpdim_hom(cfg: &Config) -> Result<Vec<Report>> {
    let primes = cfg.primes(&[2, 3, 5, 7, 11, 13])?;
    let mut product = Report::new("fpdim(X ⊗ Y) = fpdim(X) fpdim(Y)");
    let mut sum = Report::new("fpdim(X ⊕ Y) = fpdim(X) + fpdim(Y)");
    let mut rng = cfg.rng(0);
    for _ in 0..cfg.instances(200) {
        let p = primes[rng.gen_range(0..primes.len())];
        let draw = |rng: &mut ChaCha8Rng| {
            let mult = (0..rank(p)).map(|_| rng.gen_range(0..=3)).collect();
            VerObject::new(p, mult)
        };
        let (x, y) = (draw(&mut rng)?, draw(&mut rng)?);
        product.record(fuse(&x, &y).map(|xy| fpdim(&xy) == &fpdim(&x) * &fpdim(&y)), || format!("p={p} X={x} Y={y}"));
        sum.record(x.direct_sum(&y).map(|s| fpdim(&s) == &fpdim(&x) + &fpdim(&y)), || format!("p={p} X={x} Y={y}"));
    }
    Ok(vec![product, sum])
}

/// `δ(V) ≥ |[dim V]_q|`, decided from a 128-bit enclosure of the difference.
fn delta_dominates(t: &JordanType) -> Result<bool> {
    let p = t.p();
    let n = t.dim() as i64;
    let mut bound = qint(p, n)?;
    if n.rem_euclid(2 * p as i64) > p as i64 {
        bound = -bound;
    }
    let diff = &delta(t) - &bound;
    if diff.is_zero() {
        return Ok(true);
    }
    let iv = diff.numeric_eval(128);
    if iv.lo.is_positive() {
        Ok(true)
    } else if iv.hi.is_negative() {
        Ok(false)
    } else {
        Err(Error::Inconsistent("sign undecided at 128 bits".into()))
    }
}

fn second_identity_holds(v: &CyclicRep, t: &JordanType, cap: usize) -> Result<bool> {
    let p = t.p();
    let s2 = jordan_type_of(&sym_power(v, 2, cap)?);
    let w2 = jordan_type_of(&wedge_power(v, 2, cap)?);
    let lhs = &delta(&s2) - &delta(&w2);
    let mut rhs = CycNum::zero(p)?;
    for k in 1..p as usize {
        let m = t.multiplicity(k);
        if m > 0 {
            rhs += &qint_at_power(p, k as i64, 2)?.scale(&BigInt::from(m));
        }
    }
    Ok(lhs == rhs && recover_jordan_content(p, &delta(t), &lhs)? == delta_content(t))
}

fn growth_rate(cfg: &Config) -> Result<Vec<Report>> {
    let mut mult = Report::new("δ(V ⊗ W) = δ(V) δ(W), oracle tensor");
    let mut congruence = Report::new("dim V ≡ Σ k m_k mod p on oracle tensors");
    let mut bound = Report::new("δ(V) ≥ |[dim V]_q| at 128-bit precision");
    let mut second = Report::new("δ(S²V) - δ(∧²V) = Σ [k]_{q²} m_k and content recovery, dim V ≤ 8");
    for p in cfg.primes(&[3, 5, 7])? {
        let mut rng = cfg.rng(p as u64);
        for _ in 0..cfg.instances(40) {
            let (s, t) = (random_jordan_type(&mut rng, p, 10), random_jordan_type(&mut rng, p, 10));
            let v = CyclicRep::from_jordan_type(&s)?.random_conjugate(&mut rng);
            let w = CyclicRep::from_jordan_type(&t)?.random_conjugate(&mut rng);
            let label = || format!("p={p} V={s} W={t}");
            let vw = match tensor(&v, &w, cfg.cap) {
                Ok(x) => jordan_type_of(&x),
                Err(e) => {
                    mult.record(Err(e), label);
                    continue;
                }
            };
            mult.record(Ok(delta(&vw) == &delta(&s) * &delta(&t)), label);
            let weighted: u64 = delta_content(&vw).m.iter().enumerate().map(|(k, &m)| (k as u64 + 1) * m).sum();
            congruence.record(Ok((vw.dim() - weighted).is_multiple_of(p as u64)), label);
            bound.record(delta_dominates(&s), || format!("p={p} V={s}"));
            bound.record(delta_dominates(&vw), || format!("p={p} V={vw}"));
            if p > 2 && s.dim() <= 8 {
                second.record(second_identity_holds(&v, &s, cfg.cap), || format!("p={p} V={s}"));
            }
        }
    }
    Ok(vec![mult, congruence, bound, second])
}

/// `ad(X)` from the direct computation when it fits the cap, otherwise from
/// the summand decomposition. The flag says which route was used.
fn ad_exact(x: &VerObject, cap: usize) -> Result<(Option<u64>, bool)> {
    match ad(x, cap) {
        Err(Error::CapExceeded { .. }) => Ok((ad_by_summands(x, cap)?, true)),
        other => Ok((other?, false)),
    }
}

fn alt(cfg: &Config) -> Result<Vec<Report>> {
    let primes = cfg.primes(&[3, 5])?;
    let mut simples = Report::new("ad(L_i) = i");
    let mut eq_rep = Report::new("A^n(V ⊕ W) = ⊕ A^i V ⊗ A^{n-i} W as Jordan types in Rep C_p");
    let mut eq_ver = Report::new("A^n(L_i ⊕ L_j) = ⊕ A^k L_i ⊗ A^{n-k} L_j in Ver_p (direct computation)");
    let mut xy = Report::new("ad(L_i ⊗ L_j) ≤ ad(L_i) ad(L_j) and gd(L_i ⊗ L_j) ≥ gd(L_i) gd(L_j)");
    let mut sums = Report::new("ad(L_i ⊕ L_j) = ad(L_i) + ad(L_j) and gd(L_i ⊕ L_j) ≥ gd(L_i) + gd(L_j)");
    let mut bcd = Report::new("ℓ(X) ≤ ad(X) and gd(X) ≤ ad(X) for random X");
    let (mut eq_skipped, mut via_summands) = (0u64, 0u64);

    for &p in &primes {
        for i in 1..=rank(p) {
            simples.record(ad(&simple(p, i), cfg.cap).map(|a| a == Some(i as u64)), || format!("p={p} L{i}"));
        }
        for i in 1..=rank(p) {
            for j in 1..=rank(p) {
                let (x, y) = (simple(p, i), simple(p, j));
                let sum = x.direct_sum(&y)?;
                let product = fuse(&x, &y)?;
                let label = || format!("p={p} L{i}, L{j}");

                let outcome = ad_exact(&product, cfg.cap).map(|(a, summands)| {
                    via_summands += summands as u64;
                    a.is_some_and(|a| a <= (i * j) as u64) && gd(&product).cmp_real(&(&gd(&x) * &gd(&y))) != Ordering::Less
                });
                xy.record(outcome, label);
                let outcome = ad_exact(&sum, cfg.cap).map(|(a, summands)| {
                    via_summands += summands as u64;
                    a == Some((i + j) as u64) && gd(&sum).cmp_real(&(&gd(&x) + &gd(&y))) != Ordering::Less
                });
                sums.record(outcome, label);

                for n in 0..=i + j {
                    if ((i + j) as u128).pow(n as u32) > cfg.cap as u128 {
                        eq_skipped += 1;
                        continue;
                    }
                    let outcome = (|| {
                        let mut rhs = VerObject::zero(p)?;
                        for k in 0..=n {
                            let a = fuse(&alt_power_ver(&x, k, cfg.cap)?, &alt_power_ver(&y, n - k, cfg.cap)?)?;
                            rhs = rhs.direct_sum(&a)?;
                        }
                        Ok(alt_power_ver(&sum, n, cfg.cap)? == rhs
                            && alt_power_ver_by_summands(&sum, n, cfg.cap)? == rhs)
                    })();
                    eq_ver.record(outcome, || format!("p={p} L{i} ⊕ L{j}, n={n}"));
                }
            }
        }
    }
    eq_ver.note = (eq_skipped > 0).then(|| format!("{eq_skipped} degrees skipped: tensor power beyond the cap"));
    xy.note = (via_summands > 0)
        .then(|| format!("{via_summands} objects beyond the cap used the summand decomposition for ad"));
    sums.note = xy.note.clone();

    let mut rng = cfg.rng(0);
    for _ in 0..cfg.instances(20) {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let s = random_jordan_type(&mut rng, p, 2);
        let t = random_jordan_type(&mut rng, p, 2);
        let outcome = (|| {
            let v = CyclicRep::from_jordan_type(&s)?.random_conjugate(&mut rng);
            let w = CyclicRep::from_jordan_type(&t)?.random_conjugate(&mut rng);
            let vw = v.direct_sum(&w)?;
            for n in 0..=vw.dim() {
                let lhs = jordan_type_of(&skew_image(&vw, n, cfg.cap)?);
                let mut rhs = JordanType::zero(p)?;
                for i in 0..=n {
                    let part = tensor(&skew_image(&v, i, cfg.cap)?, &skew_image(&w, n - i, cfg.cap)?, cfg.cap)?;
                    rhs = rhs.direct_sum(&jordan_type_of(&part))?;
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        eq_rep.record(outcome, || format!("p={p} V={s} W={t}"));
    }

    let bcd_primes: Vec<u32> = cfg.primes(&[3, 5, 7])?;
    let mut rng = cfg.rng(1);
    for _ in 0..cfg.instances(20) {
        let p = bcd_primes[rng.gen_range(0..bcd_primes.len())];
        let x = random_object(&mut rng, p, 5);
        let outcome = ad_exact(&x, cfg.cap).map(|(a, _)| {
            a.is_some_and(|a| {
                length(&x) <= a && gd(&x).cmp_real(&CycNum::from_integer(p, a).expect("valid p")) != Ordering::Greater
            })
        });
        bcd.record(outcome, || format!("p={p} X={x}"));
    }
    Ok(vec![simples, eq_rep, eq_ver, xy, sums, bcd])
}

fn padic(cfg: &Config) -> Result<Vec<Report>> {
    let mut matches_ad = Report::new("padic_dimension_of(X) = ad(X)");
    let mut round_trip = Report::new("digit extraction inverts Π (1 + z^{p^k})^{t_k}");
    for p in cfg.primes(&[3, 5])? {
        let mut rng = cfg.rng(p as u64);
        for _ in 0..cfg.instances(25) {
            let x = random_object(&mut rng, p, 5);
            let outcome = (|| Ok(Some(padic_dimension_of(&x, cfg.cap)?.value()) == ad(&x, cfg.cap)?.map(BigInt::from)))();
            matches_ad.record(outcome, || format!("p={p} X={x}"));
        }
    }
    let mut rng = cfg.rng(0);
    for _ in 0..100 {
        let p = [2u32, 3, 5, 7][rng.gen_range(0..4)];
        let len = rng.gen_range(0..=3);
        let digits: Vec<u32> = (0..len).map(|_| rng.gen_range(0..p)).collect();
        let mut expected = digits.clone();
        while expected.last() == Some(&0) {
            expected.pop();
        }
        let outcome = padic_dimension(p, &series_from_digits(p, &digits)).map(|d| d.digits == expected);
        round_trip.record(outcome, || format!("p={p} digits={digits:?}"));
    }
    Ok(vec![matches_ad, round_trip])
}

fn frobenius_suite(cfg: &Config) -> Result<Vec<Report>> {
    let mut table = Report::new("Fr(L_i) = 1 ⊠ L_i (i odd), L_{p-1} ⊠ L_{p-i} (i even)");
    let mut collapse = Report::new("Fr followed by the tensor product is the identity");
    let mut enhanced = Report::new("(id ⊠ R) ∘ Fr^en = Fr");
    let mut monoidal = Report::new("Fr(L_i ⊗ L_j) = Fr(L_i) ⊗ Fr(L_j)");
    let mut kind = Report::new("Ver_p has Frobenius type Ver_p^+");
    for p in cfg.primes(&[3, 5, 7])? {
        if p == 2 {
            continue;
        }
        let n = rank(p);
        for i in 1..=n {
            let x = simple(p, i);
            let mut expected = VerPair::zero(p)?;
            if i % 2 == 1 {
                expected.add_term(1, i, 1);
            } else {
                expected.add_term(p as usize - 1, p as usize - i, 1);
            }
            table.record(Ok(frobenius(&x) == expected), || format!("p={p} L{i}"));
            collapse.record(Ok(frobenius_collapse(&x) == x), || format!("p={p} L{i}"));
            enhanced.record(Ok(frobenius_enhanced(&x).restrict() == frobenius(&x)), || format!("p={p} L{i}"));
            for j in 1..=n {
                let outcome = (|| Ok(frobenius(&fuse_simples(p, i, j)?) == frobenius(&x).fuse(&frobenius(&simple(p, j)))?))();
                monoidal.record(outcome, || format!("p={p} L{i} ⊗ L{j}"));
            }
        }
        let everything = VerObject::new(p, vec![1; n])?;
        let expected = if p == 3 { FrobeniusType::Vec } else { FrobeniusType::VerPlus };
        kind.record(Ok(frobenius_type(&everything) == expected), || format!("p={p}"));
    }
    Ok(vec![table, collapse, enhanced, monoidal, kind])
}

fn iterated_fr_plus(cfg: &Config) -> Result<Vec<Report>> {
    let mut report = Report::new("Fr_+^{(2)} V ≅ Fr_+(Fr_+ V) as Jordan types");
    report.note = Some("all V with dim ≤ 3 at p = 2 and dim ≤ 2 at p = 3, standard and conjugated".into());
    let mut rng = cfg.rng(0);
    for (p, max_dim) in [(2u32, 3u64), (3, 2)] {
        if cfg.primes.as_ref().is_some_and(|l| !l.contains(&p)) {
            continue;
        }
        for t in all_jordan_types(p, max_dim) {
            let standard = CyclicRep::from_jordan_type(&t)?;
            let conjugated = standard.random_conjugate(&mut rng);
            for v in [standard, conjugated] {
                let outcome = (|| {
                    let direct = jordan_type_of(&fr_plus(&v, 2, cfg.cap)?);
                    let iterated = jordan_type_of(&fr_plus(&fr_plus(&v, 1, cfg.cap)?, 1, cfg.cap)?);
                    Ok(direct == iterated)
                })();
                report.record(outcome, || format!("p={p} V={t}"));
            }
        }
    }
    Ok(vec![report])
}

fn sd(cfg: &Config) -> Result<Vec<Report>> {
    let mut trivial = Report::new("sd(k^m) = m: sd_at_least(k^m, n) iff n ≤ m, m ≤ 3, n ≤ 4");
    let mut bcd = Report::new("sd(V) ≤ ad(V) for every V with dim ≤ 3");
    for p in cfg.primes(&[2, 3])? {
        for m in 1..=3usize {
            for n in 1..=4usize {
                let outcome = CyclicRep::trivial(p, m).and_then(|v| Ok(sd_at_least(&v, n, cfg.cap)? == (n <= m)));
                trivial.record(outcome, || format!("p={p} m={m} n={n}"));
            }
        }
        for t in all_jordan_types(p, 3) {
            let outcome = (|| {
                let v = CyclicRep::from_jordan_type(&t)?;
                let a = ad_rep(&v, cfg.cap)?.unwrap_or(0) as usize;
                for n in 1..=4 {
                    if sd_at_least(&v, n, cfg.cap)? && n > a {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            bcd.record(outcome, || format!("p={p} V={t}"));
        }
    }
    Ok(vec![trivial, bcd])
}

fn partition_suite(cfg: &Config) -> Result<Vec<Report>> {
    let primes = cfg.primes(&[2, 3, 5])?;
    let mut cores = Report::new("ρ_k is p-regular and its own p-core, k ≤ 4");
    let mut greedy = Report::new("greedy chain reaches ρ_{λ_1} through conormal additions, |λ| ≤ 10");
    let mut envelope = Report::new("james_envelope(λ) ⊇ λ, same length, satisfies James' condition, |λ| ≤ 12");
    let mut bound = Report::new("sasha_bound(p, n) = n (p-1) (p^{ℓ_p(n)} - 1) ≥ n");
    for &p in &primes {
        for k in 0..=4 {
            let r = rho(p, k);
            cores.record(Ok(is_p_regular(&r, p) && p_core(&r, p) == r), || format!("p={p} k={k}"));
        }
        for n in 1..=10 {
            for lambda in Partition::all_of_size(n).into_iter().filter(|l| is_p_regular(l, p)) {
                let outcome = greedy_to_rho(&lambda, p).map(|chain| {
                    let end = chain.last().unwrap_or(&lambda);
                    *end == rho(p, lambda.row(1)) && chain.iter().all(|c| is_p_regular(c, p))
                });
                greedy.record(outcome, || format!("p={p} λ={lambda}"));
            }
        }
        for n in 1..=12 {
            for lambda in Partition::all_of_size(n) {
                let outcome = james_envelope(&lambda, p)
                    .map(|mu| mu.contains(&lambda) && mu.len() == lambda.len() && james_condition(&mu, p));
                envelope.record(outcome, || format!("p={p} λ={lambda}"));
            }
        }
    }
    let mut rng = cfg.rng(0);
    for _ in 0..cfg.instances(20) {
        let p = [2u32, 3, 5, 7, 11][rng.gen_range(0..5)];
        let n: u64 = rng.gen_range(1..=100_000);
        // ℓ_p(n) for n ≥ 1 is the number of base-p digits
        let digits = n.ilog(p as u64) + 1;
        let expected = n as u128 * (p as u128 - 1) * ((p as u128).pow(digits) - 1);
        let outcome = sasha_bound(p, n).map(|b| b == expected && ell_p(p, n) == digits && b >= n as u128);
        bound.record(outcome, || format!("p={p} n={n}"));
    }
    Ok(vec![cores, greedy, envelope, bound])
}

fn mckay(cfg: &Config) -> Result<Vec<Report>> {
    let mut report = Report::new("McKay graph of L_2 is the path A_{p-1}");
    for p in cfg.primes(&[5, 7])? {
        if p < 3 {
            continue;
        }
        let outcome = mckay_graph(&simple(p, 2)).map(|g| g.is_path() && g.vertices == (1..p as usize).collect::<Vec<_>>());
        report.record(outcome, || format!("p={p}"));
    }
    Ok(vec![report])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(primes: &[u32], instances: u64) -> Config {
        Config { seed: 3, instances: Some(instances), primes: Some(primes.to_vec()), cap: crate::DEFAULT_CAP }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        let cfg = quick(&[3], 3);
        for s in [Suite::FusionOracle, Suite::FpdimHom, Suite::Delta, Suite::Padic, Suite::Frobenius, Suite::Mckay] {
            let a = run(s, &cfg).unwrap();
            assert!(a.passed(), "{a:?}");
            assert_eq!(a, run(s, &cfg).unwrap());
        }
    }

    #[test]
    fn generators_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let x = random_object(&mut rng, 7, 6);
            assert!(!x.is_zero() && x.lift_dim() <= 6);
            let t = random_jordan_type(&mut rng, 5, 10);
            assert!(t.dim() >= 1 && t.dim() <= 10);
        }
        assert_eq!(all_jordan_types(2, 3).len(), 1 + 2 + 2);
        assert_eq!(all_jordan_types(3, 2).len(), 1 + 2);
    }

    #[test]
    fn failures_are_reported() {
        let mut r = Report::new("x");
        r.record(Ok(true), || "a".into());
        r.record(Ok(false), || "b".into());
        r.record(Err(Error::Overflow), || "c".into());
        assert_eq!(r.instances, 3);
        assert_eq!(r.failures, vec!["b".to_string(), "c: arithmetic overflow".to_string()]);
    }
}
