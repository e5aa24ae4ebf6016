//! Graded linear algebra on the Jacobian ideal: Hilbert function of the
//! Milnor algebra, total Tjurina number, minimal degree of Jacobian
//! relations, minimal resolution exponents and the free / nearly-free /
//! plus-one-generated classification.
//!
//! Relations among the partials are scanned degree by degree. In degree `t`
//! a modular elimination bounds the rank of the Jacobian map from below and
//! the multiples of the generators found so far (exact syzygies) bound the
//! relation space from below; when the two bounds meet, the dimension is
//! certified without further work. Otherwise the kernel is computed exactly
//! and new generators are chosen from it.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::modp::{reduce_element, ModMatrix};
use crate::linalg::{certified_kernel, ExactRowBasis, SplitPrime, SplitPrimes};
use crate::numberfield::{FieldElement, FieldRef};
use crate::polyring::{dim_s, graded_map_matrix, monomials, HomPoly, Monomial};

/// Largest degree handled by the linear-algebra path.
pub const DEGREE_CAP: u32 = 12;

/// Hilbert function of the Milnor algebra on the computed range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedDims {
    pub dims: BTreeMap<usize, usize>,
    pub stabilized_value: Option<usize>,
}

/// Exponents of the minimal graded free resolution
/// `0 -> ⊕ S(-e_j) -> ⊕ S(1-d-d_i) -> S^3(1-d) -> S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub d: u32,
    pub m: usize,
    pub d_list: Vec<u32>,
    pub e_list: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveClass {
    Smooth,
    Free,
    NearlyFree,
    PlusOneGenerated { level: u32 },
    Syzygy { m: usize },
}

impl CurveClass {
    pub fn label(&self) -> String {
        match self {
            CurveClass::Smooth => "smooth".into(),
            CurveClass::Free => "free".into(),
            CurveClass::NearlyFree => "nearly-free".into(),
            CurveClass::PlusOneGenerated { .. } => "plus-one-generated".into(),
            CurveClass::Syzygy { m } => format!("{m}-syzygy"),
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Everything the scan produces for one curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorReport {
    pub d: u32,
    pub tau: usize,
    pub mdr: u32,
    pub resolution: Resolution,
    pub class: CurveClass,
    /// `(d-1)^2 - d1 (d - d1 - 1)`.
    pub dpw_value: i64,
    pub dims: GradedDims,
}

struct Generator {
    degree: u32,
    /// Dense coefficients of `(a, b, c)` in `S_degree^3`.
    exact: Vec<FieldElement>,
    image: Vec<u64>,
}

/// Incremental scan of the relation module of one curve.
pub struct MilnorEngine {
    d: u32,
    field: FieldRef,
    partials: [HomPoly; 3],
    prime: SplitPrime,
    /// mod-p images of the partials' terms
    partial_images: Vec<Vec<(Monomial, u64)>>,
    generators: Vec<Generator>,
    /// certified `ar(t)` for `t < ar.len()`
    ar: Vec<usize>,
    /// modular lower bounds for the rank of the Jacobian map in degree `t`
    jac_rank: BTreeMap<u32, usize>,
}

impl MilnorEngine {
    /// `f` must be reduced (not checked) and of degree at most [`DEGREE_CAP`].
    pub fn new(f: &HomPoly) -> Result<Self> {
        let d = f.degree();
        if d > DEGREE_CAP {
            return Err(Error::DegreeCap(d));
        }
        if d < 1 || f.is_zero() {
            return Err(Error::ZeroForm);
        }
        // ranks do not change under field extension
        let f = f.descend_to_rationals().unwrap_or_else(|| f.clone());
        let field = f.field().clone();
        let prime = SplitPrimes::new(&field)
            .next()
            .ok_or_else(|| Error::Certification("no split prime".into()))?;
        let mut engine = MilnorEngine {
            d,
            field,
            partials: f.gradient(),
            prime,
            partial_images: vec![],
            generators: vec![],
            ar: vec![],
            jac_rank: BTreeMap::new(),
        };
        if !engine.reimage() {
            engine.switch_prime()?;
        }
        Ok(engine)
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    fn reduce(&self, x: &FieldElement) -> Option<u64> {
        reduce_element(x, self.prime.roots[0], self.prime.p)
    }

    /// Recomputes all images at the current prime; false if some value does
    /// not reduce.
    fn reimage(&mut self) -> bool {
        let mut partial_images = Vec::with_capacity(3);
        for g in &self.partials {
            let terms: Option<Vec<(Monomial, u64)>> = g.terms().map(|(m, c)| Some((*m, self.reduce(c)?))).collect();
            match terms {
                Some(t) => partial_images.push(t),
                None => return false,
            }
        }
        let mut images = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let img: Option<Vec<u64>> = g.exact.iter().map(|x| self.reduce(x)).collect();
            match img {
                Some(i) => images.push(i),
                None => return false,
            }
        }
        self.partial_images = partial_images;
        for (g, img) in self.generators.iter_mut().zip(images) {
            g.image = img;
        }
        true
    }

    fn switch_prime(&mut self) -> Result<()> {
        loop {
            self.prime = SplitPrimes::starting_below(&self.field, self.prime.p)
                .next()
                .ok_or_else(|| Error::Certification("no usable prime".into()))?;
            if self.reimage() {
                return Ok(());
            }
        }
    }

    /// Modular Jacobian map `S_t^3 -> S_(t+d-1)`, stored transposed (one row
    /// per source basis vector).
    fn jacobian_mod_p(&self, t: u32) -> ModMatrix {
        let src = monomials(t);
        let n = src.len();
        let mut m = ModMatrix::zeros(self.prime.p, 3 * n, dim_s((t + self.d - 1) as usize));
        for (k, terms) in self.partial_images.iter().enumerate() {
            for (j, mu) in src.iter().enumerate() {
                for (mono, v) in terms {
                    m.add_to(k * n + j, mono.times(mu).index(), *v);
                }
            }
        }
        m
    }

    /// Rows `mu * g` for every generator `g` and monomial `mu` of degree `t - deg g`, mod p.
    fn multiples_mod_p(&self, t: u32) -> ModMatrix {
        let n = dim_s(t as usize);
        let rows: usize = self.generators.iter().map(|g| dim_s((t - g.degree) as usize)).sum();
        let mut m = ModMatrix::zeros(self.prime.p, rows, 3 * n);
        let mut r = 0;
        for g in &self.generators {
            let gm = monomials(g.degree);
            let gn = gm.len();
            for mu in monomials(t - g.degree) {
                for k in 0..3 {
                    for (i, mono) in gm.iter().enumerate() {
                        let v = g.image[k * gn + i];
                        if v != 0 {
                            m.set(r, k * n + mono.times(&mu).index(), v);
                        }
                    }
                }
                r += 1;
            }
        }
        m
    }

    /// Computes modular Jacobian ranks for the given degrees in parallel.
    fn prefetch_jacobian(&mut self, degrees: impl IntoIterator<Item = u32>) {
        let todo: Vec<u32> = degrees.into_iter().filter(|t| !self.jac_rank.contains_key(t)).collect();
        let ranks: Vec<(u32, usize)> = todo.par_iter().map(|&t| (t, self.jacobian_mod_p(t).rank())).collect();
        self.jac_rank.extend(ranks);
    }

    /// Extends the certified scan through degree `t`.
    pub fn scan_to(&mut self, t: u32) -> Result<()> {
        let start = self.ar.len() as u32;
        if start > t {
            return Ok(());
        }
        self.prefetch_jacobian(start..=t);
        for s in start..=t {
            self.step(s)?;
        }
        Ok(())
    }

    fn step(&mut self, t: u32) -> Result<()> {
        let total = 3 * dim_s(t as usize);
        let r_p = self.jac_rank[&t];
        let s_p = self.multiples_mod_p(t).rank();
        if r_p + s_p == total {
            // rank >= r_p, so ar <= total - r_p = s_p <= ar
            self.ar.push(s_p);
            return Ok(());
        }
        if r_p + s_p > total {
            return Err(Error::Certification(format!("inconsistent bounds in degree {t}")));
        }
        let jac = graded_map_matrix(&self.partials, t + self.d - 1)?;
        let kernel = certified_kernel(&jac)?;
        let k = kernel.basis.len();
        let n = dim_s(t as usize);
        let free_pos: BTreeMap<usize, usize> = kernel.free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        // exact multiples, restricted to the free columns
        let mut span = ExactRowBasis::new();
        let zero = FieldElement::zero(&self.field);
        for g in &self.generators {
            let gm = monomials(g.degree);
            let gn = gm.len();
            for mu in monomials(t - g.degree) {
                let mut row = vec![zero.clone(); k];
                for comp in 0..3 {
                    for (i, mono) in gm.iter().enumerate() {
                        let v = &g.exact[comp * gn + i];
                        if v.is_zero() {
                            continue;
                        }
                        if let Some(&pos) = free_pos.get(&(comp * n + mono.times(&mu).index())) {
                            row[pos] = v.clone();
                        }
                    }
                }
                span.insert(row);
            }
        }
        let mut fresh = Vec::new();
        for (j, v) in kernel.basis.into_iter().enumerate() {
            if span.rank() == k {
                break;
            }
            let mut unit = vec![zero.clone(); k];
            unit[j] = FieldElement::one(&self.field);
            if span.insert(unit) {
                fresh.push(v);
            }
        }
        if !fresh.is_empty() && t > 2 * self.d {
            return Err(Error::GeneratorWindow(t as usize));
        }
        for exact in fresh {
            let image: Option<Vec<u64>> = exact.iter().map(|x| self.reduce(x)).collect();
            let image = image.unwrap_or_default();
            self.generators.push(Generator {
                degree: t,
                exact,
                image,
            });
        }
        if self.generators.iter().any(|g| g.image.is_empty()) {
            self.switch_prime()?;
        }
        self.ar.push(k);
        Ok(())
    }

    /// `dim` of degree-`t` relations `a f_x + b f_y + c f_z = 0`.
    pub fn ar_dim(&mut self, t: u32) -> Result<usize> {
        self.scan_to(t)?;
        Ok(self.ar[t as usize])
    }

    /// `dim (S/J_f)_t`.
    pub fn milnor_dim(&mut self, t: u32) -> Result<usize> {
        let d = self.d;
        if t + 1 < d {
            return Ok(dim_s(t as usize));
        }
        let s = t + 1 - d;
        Ok(dim_s(t as usize) + self.ar_dim(s)? - 3 * dim_s(s as usize))
    }

    pub fn mdr(&mut self) -> Result<u32> {
        for t in 0..self.d {
            if self.ar_dim(t)? > 0 {
                return Ok(t);
            }
        }
        Err(Error::Certification("no relation up to degree d-1".into()))
    }

    /// Stabilized Hilbert function and the degree where it stabilizes.
    pub fn stabilization(&mut self) -> Result<(usize, u32)> {
        let d = self.d;
        let k0 = 3 * (d.max(2) - 2);
        let mut prev = self.milnor_dim(k0)?;
        for k in k0..k0 + d {
            let next = self.milnor_dim(k + 1)?;
            if next == prev {
                return Ok((prev, k));
            }
            prev = next;
        }
        Err(Error::NoStabilization((k0 + d) as usize))
    }

    pub fn total_tjurina(&mut self) -> Result<usize> {
        Ok(self.stabilization()?.0)
    }

    /// Minimal resolution plus everything used to build it.
    pub fn report(&mut self) -> Result<MilnorReport> {
        let d = self.d;
        let (tau, ks) = self.stabilization()?;
        let mdr = self.mdr()?;
        let last_k = ks + 2;
        let t_max = (2 * d).max(last_k + 1 - d.min(last_k + 1));
        self.scan_to(t_max)?;
        let mut d_list: Vec<u32> = self.generators.iter().map(|g| g.degree).collect();
        d_list.sort_unstable();
        let m = d_list.len();
        // h_k for k up to last_k; h_k = tau beyond the plateau
        let kmax = last_k.max(d - 1 + d_list.last().copied().unwrap_or(0)) + 3;
        let mut h = Vec::with_capacity(kmax as usize + 1);
        for k in 0..=kmax {
            h.push(if k <= ks { self.milnor_dim(k)? as i64 } else { tau as i64 });
        }
        let mut dims = BTreeMap::new();
        for k in 0..=last_k {
            dims.insert(k as usize, h[k as usize] as usize);
        }
        let mut e_list = Vec::new();
        for k in 0..=kmax as usize {
            let binom = [1i64, -3, 3, -1];
            let numer: i64 = (0..4)
                .filter(|&i| i <= k)
                .map(|i| binom[i] * h[k - i])
                .sum();
            let mut expected = 0i64;
            if k == 0 {
                expected += 1;
            }
            if k == (d - 1) as usize {
                expected -= 3;
            }
            expected += d_list.iter().filter(|&&di| (d - 1 + di) as usize == k).count() as i64;
            let count = expected - numer;
            if count < 0 {
                return Err(Error::HilbertMismatch(format!(
                    "numerator coefficient {numer} at T^{k} needs {count} second syzygies"
                )));
            }
            e_list.extend(std::iter::repeat_n(k as u32, count as usize));
        }
        if e_list.len() + 2 != m {
            return Err(Error::HilbertMismatch(format!(
                "{} second syzygies for {m} generators",
                e_list.len()
            )));
        }
        let resolution = Resolution { d, m, d_list, e_list };
        let (class, dpw_value) = classify_resolution(&resolution, tau)?;
        Ok(MilnorReport {
            d,
            tau,
            mdr,
            resolution,
            class,
            dpw_value,
            dims: GradedDims {
                dims,
                stabilized_value: Some(tau),
            },
        })
    }
}

/// Class from the resolution shape, cross-checked against the
/// du Plessis–Wall identities.
pub fn classify_resolution(res: &Resolution, tau: usize) -> Result<(CurveClass, i64)> {
    let d = res.d as i64;
    let dl = &res.d_list;
    let d1 = dl[0] as i64;
    let dpw = (d - 1) * (d - 1) - d1 * (d - d1 - 1);
    if tau == 0 {
        return Ok((CurveClass::Smooth, dpw));
    }
    let class = match res.m {
        2 if (dl[0] + dl[1]) as i64 == d - 1 => CurveClass::Free,
        3 if (dl[0] + dl[1]) as i64 == d && dl[1] == dl[2] => CurveClass::NearlyFree,
        3 if (dl[0] + dl[1]) as i64 == d => CurveClass::PlusOneGenerated { level: dl[2] },
        m => CurveClass::Syzygy { m },
    };
    let tau = tau as i64;
    if 2 * d1 < d {
        let identity = dpw == tau;
        if identity != (class == CurveClass::Free) {
            return Err(Error::ClassificationConflict(format!(
                "shape says {class}, (d-1)^2 - d1(d-d1-1) = {dpw}, tau = {tau}"
            )));
        }
    }
    if 2 * d1 <= d {
        let identity = dpw == tau + 1;
        if identity != (class == CurveClass::NearlyFree) {
            return Err(Error::ClassificationConflict(format!(
                "shape says {class}, (d-1)^2 - d1(d-d1-1) = {dpw}, tau + 1 = {}",
                tau + 1
            )));
        }
    }
    Ok((class, dpw))
}

pub fn milnor_dim(f: &HomPoly, t: u32) -> Result<usize> {
    MilnorEngine::new(f)?.milnor_dim(t)
}

pub fn ar_dim(f: &HomPoly, t: u32) -> Result<usize> {
    MilnorEngine::new(f)?.ar_dim(t)
}

pub fn mdr(f: &HomPoly) -> Result<u32> {
    MilnorEngine::new(f)?.mdr()
}

pub fn total_tjurina(f: &HomPoly) -> Result<usize> {
    MilnorEngine::new(f)?.total_tjurina()
}

pub fn minimal_resolution(f: &HomPoly) -> Result<Resolution> {
    Ok(MilnorEngine::new(f)?.report()?.resolution)
}

pub fn classify(f: &HomPoly) -> Result<CurveClass> {
    Ok(MilnorEngine::new(f)?.report()?.class)
}

/// Report for `f`.
pub fn analyze(f: &HomPoly) -> Result<MilnorReport> {
    MilnorEngine::new(f)?.report()
}

/// Independent check of modular rank bounds, for tests: the rank of the
/// modular image never exceeds the exact rank.
#[doc(hidden)]
pub fn jacobian_rank_mod_p(f: &HomPoly, t: u32) -> Result<usize> {
    let e = MilnorEngine::new(f)?;
    Ok(e.jacobian_mod_p(t).rank())
}
