//! Crossed module extensions `0 → M → V → 𝔞 → g → 0`, sections, the
//! 2-cochain ω, the 3-cocycle h, the coboundary of 2-cochains and the two
//! comparison checks (change of sections, equivalent extensions).
//!
//! All sections are twist-equivariant: `α s = s α_g` and `α_V σ = σ α_𝔫`.
//! The formulas move twists through `s` and `σ`, so the comparison
//! identities only hold for such sections.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactq::{
    commutator_operator, coords_in, is_zero_vec, left_mul_operator, solve, unit_vec, unvec, vadd,
    vec_of, vscale, vsub, zero_vec, Mat, Scalar, Tensor3, Tensor4, Vector,
};
use crate::hla::Hla;
use crate::report::{Collector, IdentityReport};
use crate::representation::{validate_rep, HomModule};
use crate::xmod::{
    check_xmod_morphism, kernel_cokernel, validate_xmod, CrossedModule, KernelCokernel,
    XModMorphism,
};

/// Where cochain values live.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValueSpace {
    /// Coordinates of the crossed module's V.
    Module,
    /// Coordinates of the kernel basis of the boundary.
    Kernel,
}

/// Bilinear cochain on g: `w0: g0×g0 → W0`, `w1: g0×g1 → W1`, `w2: g1×g1 → W0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    pub values: ValueSpace,
    pub w0: Tensor3,
    pub w1: Tensor3,
    pub w2: Tensor3,
}

impl Cochain2 {
    pub fn zero(values: ValueSpace, g: &Hla, out0: usize, out1: usize) -> Self {
        let (g0, g1) = (g.dim_even, g.dim_odd);
        Cochain2 {
            values,
            w0: Tensor3::zeros(g0, g0, out0),
            w1: Tensor3::zeros(g0, g1, out1),
            w2: Tensor3::zeros(g1, g1, out0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.w0.is_zero() && self.w1.is_zero() && self.w2.is_zero()
    }

    pub fn sub(&self, other: &Cochain2) -> Cochain2 {
        Cochain2 {
            values: self.values,
            w0: self.w0.sub(&other.w0),
            w1: self.w1.sub(&other.w1),
            w2: self.w2.sub(&other.w2),
        }
    }

    /// Applies `m0` to the even-valued components and `m1` to `w1`.
    pub fn map_values(&self, values: ValueSpace, m0: &Mat, m1: &Mat) -> Cochain2 {
        Cochain2 {
            values,
            w0: self.w0.map_output(m0),
            w1: self.w1.map_output(m1),
            w2: self.w2.map_output(m0),
        }
    }
}

/// Trilinear cochain on g with components on (even,even,even),
/// (even,even,odd), (even,odd,odd) and (odd,odd,odd) arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain3 {
    pub values: ValueSpace,
    pub h0: Tensor4,
    pub h1: Tensor4,
    pub h2: Tensor4,
    pub h3: Tensor4,
}

impl Cochain3 {
    pub fn is_zero(&self) -> bool {
        self.h0.is_zero() && self.h1.is_zero() && self.h2.is_zero() && self.h3.is_zero()
    }

    pub fn components(&self) -> [&Tensor4; 4] {
        [&self.h0, &self.h1, &self.h2, &self.h3]
    }

    pub fn sub(&self, other: &Cochain3) -> Cochain3 {
        Cochain3 {
            values: self.values,
            h0: self.h0.sub(&other.h0),
            h1: self.h1.sub(&other.h1),
            h2: self.h2.sub(&other.h2),
            h3: self.h3.sub(&other.h3),
        }
    }
}

/// Sections `s: g → 𝔞` of the projection and `σ: 𝔫 → V` of the boundary onto
/// its image 𝔫. `σ` is written in the coordinates of the image basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPair {
    pub seed: u64,
    pub s0: Mat,
    pub s1: Mat,
    pub sigma0: Mat,
    pub sigma1: Mat,
}

/// A valid crossed module with its kernel, cokernel and the induced
/// representation of the cokernel on the kernel.
#[derive(Clone, Debug)]
pub struct Extension {
    pub xmod: CrossedModule,
    pub kc: KernelCokernel,
    /// Twists restricted to the kernel, in kernel coordinates.
    pub alpha_m: Mat,
    pub beta_m: Mat,
    /// g acting on the kernel, in kernel coordinates.
    pub rho_m: HomModule,
    pub canonical: SectionPair,
}

/// Outcome of a comparison identity: mismatching instances, if any.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub holds: bool,
    pub reports: Vec<IdentityReport>,
}

impl CheckOutcome {
    fn from_reports(reports: Vec<IdentityReport>) -> Self {
        CheckOutcome {
            holds: reports.is_empty(),
            reports,
        }
    }
}

/// Matrix of a twist restricted to the invariant span of `basis`.
fn restrict_twist(t: &Mat, basis: &Mat) -> Result<Mat> {
    let cols = basis
        .columns()
        .iter()
        .map(|c| {
            coords_in(basis, &t.apply(c))
                .ok_or_else(|| Error::Structural("subspace is not twist-invariant".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_cols(basis.cols(), &cols))
}

/// A solution `X` of `a·X = b` with `cod·X = X·dom`, free variables zero.
fn solve_equivariant(a: &Mat, b: &Mat, cod: &Mat, dom: &Mat) -> Option<Mat> {
    let (xr, xc) = (a.cols(), b.cols());
    let op = left_mul_operator(a, xr, xc).vcat(&commutator_operator(cod, dom));
    let rhs: Vector = vec_of(b).into_iter().chain(zero_vec(xr * xc)).collect();
    solve(&op, &rhs).map(|x| unvec(&x, xr, xc))
}

fn is_equivariant(x: &Mat, cod: &Mat, dom: &Mat) -> bool {
    &(cod * x) - &(x * dom) == Mat::zeros(x.rows(), x.cols())
}

/// Canonical section: the complement basis if it is twist-stable, else the
/// RREF solution of `π s = id` with `α s = s α_g`.
fn section(pi: &Mat, lift: &Mat, tw: &Mat, tw_g: &Mat) -> Result<Mat> {
    if is_equivariant(lift, tw, tw_g) {
        return Ok(lift.clone());
    }
    solve_equivariant(pi, &Mat::identity(pi.rows()), tw, tw_g).ok_or(Error::NoEquivariantSection)
}

/// Canonical σ: image basis vector `∂(e_p)` goes to `e_p`, unless that is
/// not equivariant, in which case an equivariant solution is used.
fn sigma(d: &Mat, img: &Mat, piv: &[usize], tw_v: &Mat, tw_a: &Mat) -> Result<Mat> {
    let n = d.cols();
    let cols: Vec<Vector> = piv.iter().map(|&p| unit_vec(n, p)).collect();
    let pivot_sigma = Mat::from_cols(n, &cols);
    let tw_n = restrict_twist(tw_a, img)?;
    if is_equivariant(&pivot_sigma, tw_v, &tw_n) {
        return Ok(pivot_sigma);
    }
    solve_equivariant(d, img, tw_v, &tw_n).ok_or(Error::NoEquivariantSection)
}

pub fn build_extension(x: &CrossedModule) -> Result<Extension> {
    let reports = validate_xmod(x)?;
    if !reports.is_empty() {
        return Err(Error::InvalidXmod(reports));
    }
    let kc = kernel_cokernel(x)?;
    let (a, v, r) = (x.base(), x.top(), x.rep());
    let g = &kc.g;
    let s0 = section(&kc.pi0, &kc.lift0, &a.alpha, &g.alpha)?;
    let s1 = section(&kc.pi1, &kc.lift1, &a.beta, &g.beta)?;
    let sigma0 = sigma(&x.d0, &kc.img0, &kc.piv0, &v.alpha, &a.alpha)?;
    let sigma1 = sigma(&x.d1, &kc.img1, &kc.piv1, &v.beta, &a.beta)?;

    // Lifts differing by an image element must act equally on the kernel.
    let (k0, k1) = (kc.m0.columns(), kc.m1.columns());
    for n in kc.img0.columns() {
        if k0.iter().any(|m| !is_zero_vec(&r.r0e(&n, m)))
            || k1.iter().any(|m| !is_zero_vec(&r.r0o(&n, m)))
        {
            return Err(Error::LiftDependence);
        }
    }
    for n in kc.img1.columns() {
        if k0.iter().any(|m| !is_zero_vec(&r.r1e(&n, m)))
            || k1.iter().any(|m| !is_zero_vec(&r.r1o(&n, m)))
        {
            return Err(Error::LiftDependence);
        }
    }

    let alpha_m = restrict_twist(&v.alpha, &kc.m0)?;
    let beta_m = restrict_twist(&v.beta, &kc.m1)?;
    let (mm0, mm1) = (kc.m0.cols(), kc.m1.cols());
    let (c0, c1) = (s0.columns(), s1.columns());
    let to_m = |basis: &Mat, z: Vector| -> Result<Vector> {
        coords_in(basis, &z).ok_or(Error::KernelMembership(0))
    };
    let mut t = [
        Tensor3::zeros(g.dim_even, mm0, mm0),
        Tensor3::zeros(g.dim_even, mm1, mm1),
        Tensor3::zeros(g.dim_odd, mm0, mm1),
        Tensor3::zeros(g.dim_odd, mm1, mm0),
    ];
    let fill = |t: &mut Tensor3, i: usize, j: usize, z: Vector| -> Result<()> {
        for (k, c) in z.into_iter().enumerate() {
            t.set(i, j, k, c);
        }
        Ok(())
    };
    for i in 0..g.dim_even {
        for j in 0..mm0 {
            fill(&mut t[0], i, j, to_m(&kc.m0, r.r0e(&c0[i], &k0[j]))?)?;
        }
        for j in 0..mm1 {
            fill(&mut t[1], i, j, to_m(&kc.m1, r.r0o(&c0[i], &k1[j]))?)?;
        }
    }
    for i in 0..g.dim_odd {
        for j in 0..mm0 {
            fill(&mut t[2], i, j, to_m(&kc.m1, r.r1e(&c1[i], &k0[j]))?)?;
        }
        for j in 0..mm1 {
            fill(&mut t[3], i, j, to_m(&kc.m0, r.r1o(&c1[i], &k1[j]))?)?;
        }
    }
    let [rho0_even, rho0_odd, rho1_on_even, rho1_on_odd] = t;
    let rho_m = HomModule {
        dim_even: mm0,
        dim_odd: mm1,
        alpha_v: alpha_m.clone(),
        beta_v: beta_m.clone(),
        rho0_even,
        rho0_odd,
        rho1_on_even,
        rho1_on_odd,
    };
    let post = validate_rep(g, &rho_m)?;
    if !post.is_empty() {
        return Err(Error::Postcondition {
            what: "induced action on the kernel is a representation".into(),
            reports: post,
        });
    }
    Ok(Extension {
        xmod: x.clone(),
        kc,
        alpha_m,
        beta_m,
        rho_m,
        canonical: SectionPair {
            seed: 0,
            s0,
            s1,
            sigma0,
            sigma1,
        },
    })
}

impl Extension {
    pub fn g(&self) -> &Hla {
        &self.kc.g
    }

    /// `(dim M0, dim M1)`.
    pub fn kernel_dims(&self) -> (usize, usize) {
        (self.kc.m0.cols(), self.kc.m1.cols())
    }

    fn base(&self) -> &Hla {
        self.xmod.base()
    }

    fn top(&self) -> &Hla {
        self.xmod.top()
    }

    /// Checks `π s = id` and `∂ σ = id` on the image.
    pub fn check_sections(&self, sp: &SectionPair) -> Result<()> {
        let kc = &self.kc;
        let ok = (&kc.pi0 * &sp.s0).is_identity()
            && (&kc.pi1 * &sp.s1).is_identity()
            && &self.xmod.d0 * &sp.sigma0 == kc.img0
            && &self.xmod.d1 * &sp.sigma1 == kc.img1;
        if ok {
            Ok(())
        } else {
            Err(Error::Structural("section equations fail".into()))
        }
    }

    /// `σ(z)` for `z` in the image of the boundary.
    fn sigma_apply(&self, sigma: &Mat, img: &Mat, z: &[Scalar], what: &str) -> Result<Vector> {
        let c = coords_in(img, z).ok_or_else(|| Error::DefectNotInImage(what.into()))?;
        Ok(sigma.apply(&c))
    }

    fn defect0(&self, s0: &Mat, a1: &[Scalar], a2: &[Scalar]) -> Vector {
        let (a, g) = (self.base(), self.g());
        vsub(
            &a.ee(&s0.apply(a1), &s0.apply(a2)),
            &s0.apply(&g.ee(a1, a2)),
        )
    }

    fn defect1(&self, s0: &Mat, s1: &Mat, a: &[Scalar], b: &[Scalar]) -> Vector {
        let (al, g) = (self.base(), self.g());
        vsub(&al.eo(&s0.apply(a), &s1.apply(b)), &s1.apply(&g.eo(a, b)))
    }

    fn defect2(&self, s0: &Mat, s1: &Mat, b1: &[Scalar], b2: &[Scalar]) -> Vector {
        let (a, g) = (self.base(), self.g());
        vsub(
            &a.br(&s1.apply(b1), &s1.apply(b2)),
            &s0.apply(&g.br(b1, b2)),
        )
    }

    fn to_kernel(&self, c: Cochain3, component_offset: usize) -> Result<Cochain3> {
        let conv = |t: &Tensor4, basis: &Mat, idx: usize| -> Result<Tensor4> {
            let d = t.dims();
            let mut out = Tensor4::zeros([d[0], d[1], d[2], basis.cols()]);
            for i in 0..d[0] {
                for j in 0..d[1] {
                    for k in 0..d[2] {
                        let z = t.slice(i, j, k);
                        if is_zero_vec(&z) {
                            continue;
                        }
                        let m = coords_in(basis, &z)
                            .ok_or(Error::KernelMembership(idx + component_offset))?;
                        for (l, x) in m.into_iter().enumerate() {
                            out.set([i, j, k, l], x);
                        }
                    }
                }
            }
            Ok(out)
        };
        let (m0, m1) = (&self.kc.m0, &self.kc.m1);
        Ok(Cochain3 {
            values: ValueSpace::Kernel,
            h0: conv(&c.h0, m0, 0)?,
            h1: conv(&c.h1, m1, 1)?,
            h2: conv(&c.h2, m0, 2)?,
            h3: conv(&c.h3, m1, 3)?,
        })
    }

    fn cochain2_to_kernel(&self, w: &Cochain2) -> Result<Cochain2> {
        let conv = |t: &Tensor3, basis: &Mat| -> Option<Tensor3> {
            let (d1, d2, _) = t.dims();
            let mut out = Tensor3::zeros(d1, d2, basis.cols());
            for i in 0..d1 {
                for j in 0..d2 {
                    for (k, x) in coords_in(basis, &t.slice(i, j))?.into_iter().enumerate() {
                        out.set(i, j, k, x);
                    }
                }
            }
            Some(out)
        };
        let (m0, m1) = (&self.kc.m0, &self.kc.m1);
        match (conv(&w.w0, m0), conv(&w.w1, m1), conv(&w.w2, m0)) {
            (Some(w0), Some(w1), Some(w2)) => Ok(Cochain2 {
                values: ValueSpace::Kernel,
                w0,
                w1,
                w2,
            }),
            _ => Err(Error::Postcondition {
                what: "2-cochain takes values in the kernel".into(),
                reports: vec![],
            }),
        }
    }
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::frac(rng.gen_range(-2..=2), rng.gen_range(1..=2))
}

/// A nonzero pseudorandom combination of `basis` (zero if `basis` is empty).
fn random_combination(basis: &[Mat], rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    if basis.is_empty() {
        return Mat::zeros(rows, cols);
    }
    loop {
        let mut m = Mat::zeros(rows, cols);
        for b in basis {
            m = &m + &b.scale(&random_scalar(rng));
        }
        if !m.is_zero() {
            return m;
        }
    }
}

/// A pseudorandom twist-equivariant graded map `g → V` derived from `seed`.
pub fn equivariant_perturbation(e: &Extension, seed: u64) -> (Mat, Mat) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (v, g) = (e.top(), e.g());
    let b0 = crate::exactq::commuting_maps(&v.alpha, &g.alpha);
    let b1 = crate::exactq::commuting_maps(&v.beta, &g.beta);
    (
        random_combination(&b0, v.dim_even, g.dim_even, &mut rng),
        random_combination(&b1, v.dim_odd, g.dim_odd, &mut rng),
    )
}

/// Seed 0: the canonical sections. Seed `k > 0`: `s + ∂f` for the
/// equivariant perturbation `f` of seed `k`; `σ` stays canonical.
pub fn choose_sections(e: &Extension, seed: u64) -> Result<SectionPair> {
    let mut sp = e.canonical.clone();
    sp.seed = seed;
    if seed > 0 {
        let (f0, f1) = equivariant_perturbation(e, seed);
        sp.s0 = &sp.s0 + &(&e.xmod.d0 * &f0);
        sp.s1 = &sp.s1 + &(&e.xmod.d1 * &f1);
    }
    e.check_sections(&sp)?;
    Ok(sp)
}

/// Tensor whose slices come from a fallible function.
fn try_tensor3(
    d1: usize,
    d2: usize,
    d3: usize,
    mut f: impl FnMut(usize, usize) -> Result<Vector>,
) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(d1, d2, d3);
    for i in 0..d1 {
        for j in 0..d2 {
            for (k, x) in f(i, j)?.into_iter().enumerate() {
                t.set(i, j, k, x);
            }
        }
    }
    Ok(t)
}

/// `ω = σ(defect of s)` in each of the three argument types, V-valued.
pub fn omega(e: &Extension, sp: &SectionPair) -> Result<Cochain2> {
    e.check_sections(sp)?;
    let g = e.g();
    let (g0, g1) = (g.dim_even, g.dim_odd);
    let (v0, v1) = (e.top().dim_even, e.top().dim_odd);
    let (img0, img1) = (&e.kc.img0, &e.kc.img1);
    let w0 = try_tensor3(g0, g0, v0, |i, j| {
        let d = e.defect0(&sp.s0, &g.e(i), &g.e(j));
        e.sigma_apply(&sp.sigma0, img0, &d, &format!("even-even ({i},{j})"))
    })?;
    let w1 = try_tensor3(g0, g1, v1, |i, j| {
        let d = e.defect1(&sp.s0, &sp.s1, &g.e(i), &g.o(j));
        e.sigma_apply(&sp.sigma1, img1, &d, &format!("even-odd ({i},{j})"))
    })?;
    let w2 = try_tensor3(g1, g1, v0, |i, j| {
        let d = e.defect2(&sp.s0, &sp.s1, &g.o(i), &g.o(j));
        e.sigma_apply(&sp.sigma0, img0, &d, &format!("odd-odd ({i},{j})"))
    })?;
    Ok(Cochain2 {
        values: ValueSpace::Module,
        w0,
        w1,
        w2,
    })
}

/// The shared degree-2 → 3 formula: with `rho` a g-action on the value
/// space of `w` and `A = α_g`, `B = β_g`,
///
/// - `c0(a1,a2,a3) = ρ(Aa1)w0(a2,a3) + w0(Aa1, a2a3) − ρ(Aa3)w0(a1,a2) − w0(a1a2, Aa3)`
/// - `c1(a1,a2,b) = ρ(Aa1)w1(a2,b) + w1(Aa1, a2b) − ½ρ(Bb)w0(a1,a2) − ½w1(a1a2, Bb)`
/// - `c2(a,b1,b2) = ρ(Aa)w2(b1,b2) + w0(Aa,[b1,b2]) + ρ(Bb2)w1(a,b1) − w2(ab1, Bb2)
///   − ρ(Bb1)w1(a,b2) − w2(Bb1, ab2)`
/// - `c3(b1,b2,b3) = Σ_cyc ρ(Bb1)w2(b2,b3) + w1([b2,b3], Bb1)`
fn degree3(g: &Hla, rho: &HomModule, w: &Cochain2) -> Cochain3 {
    let (g0, g1) = (g.dim_even, g.dim_odd);
    let (o0, o1) = (rho.dim_even, rho.dim_odd);
    let half = Scalar::half();
    let xs: Vec<Vector> = (0..g0).map(|i| g.e(i)).collect();
    let ys: Vec<Vector> = (0..g1).map(|i| g.o(i)).collect();
    let ax: Vec<Vector> = xs.iter().map(|x| g.tw0(x)).collect();
    let by: Vec<Vector> = ys.iter().map(|y| g.tw1(y)).collect();
    let (w0, w1, w2) = (&w.w0, &w.w1, &w.w2);

    let h0 = Tensor4::from_fn([g0, g0, g0, o0], |i, j, k| {
        let t1 = rho.r0e(&ax[i], &w0.slice(j, k));
        let t2 = w0.apply(&ax[i], &g.ee(&xs[j], &xs[k]));
        let t3 = rho.r0e(&ax[k], &w0.slice(i, j));
        let t4 = w0.apply(&g.ee(&xs[i], &xs[j]), &ax[k]);
        vsub(&vadd(&t1, &t2), &vadd(&t3, &t4))
    });
    let h1 = Tensor4::from_fn([g0, g0, g1, o1], |i, j, k| {
        let t1 = rho.r0o(&ax[i], &w1.slice(j, k));
        let t2 = w1.apply(&ax[i], &g.eo(&xs[j], &ys[k]));
        let t3 = rho.r1e(&by[k], &w0.slice(i, j));
        let t4 = w1.apply(&g.ee(&xs[i], &xs[j]), &by[k]);
        vsub(&vadd(&t1, &t2), &vscale(&half, &vadd(&t3, &t4)))
    });
    let h2 = Tensor4::from_fn([g0, g1, g1, o0], |i, j, k| {
        let t1 = rho.r0e(&ax[i], &w2.slice(j, k));
        let t2 = w0.apply(&ax[i], &g.br(&ys[j], &ys[k]));
        let t3 = rho.r1o(&by[k], &w1.slice(i, j));
        let t4 = w2.apply(&g.eo(&xs[i], &ys[j]), &by[k]);
        let t5 = rho.r1o(&by[j], &w1.slice(i, k));
        let t6 = w2.apply(&by[j], &g.eo(&xs[i], &ys[k]));
        vsub(&vadd(&vadd(&t1, &t2), &t3), &vadd(&vadd(&t4, &t5), &t6))
    });
    let h3 = Tensor4::from_fn([g1, g1, g1, o1], |i, j, k| {
        let mut acc = zero_vec(o1);
        for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
            acc = vadd(&acc, &rho.r1e(&by[p], &w2.slice(q, r)));
            acc = vadd(&acc, &w1.apply(&g.br(&ys[q], &ys[r]), &by[p]));
        }
        acc
    });
    Cochain3 {
        values: w.values,
        h0,
        h1,
        h2,
        h3,
    }
}

/// The 3-cocycle of the extension for the given sections, in kernel
/// coordinates. Fails if a value is not in the kernel of the boundary.
pub fn cocycle_h(e: &Extension, sp: &SectionPair) -> Result<Cochain3> {
    let w = omega(e, sp)?;
    let rho = e.xmod.rep().pullback(&sp.s0, &sp.s1);
    e.to_kernel(degree3(e.g(), &rho, &w), 0)
}

/// Coboundary of a kernel-valued 2-cochain, using the induced g-action.
pub fn coboundary_d2(e: &Extension, theta: &Cochain2) -> Result<Cochain3> {
    let g = e.g();
    let (m0, m1) = e.kernel_dims();
    let want = Cochain2::zero(ValueSpace::Kernel, g, m0, m1);
    if theta.values != ValueSpace::Kernel
        || theta.w0.dims() != want.w0.dims()
        || theta.w1.dims() != want.w1.dims()
        || theta.w2.dims() != want.w2.dims()
    {
        return Err(Error::Dimension(
            "2-cochain must be kernel-valued over the cokernel algebra".into(),
        ));
    }
    Ok(degree3(g, &e.rho_m, theta))
}

/// The map `f: g → V`, twist-equivariant, with `∂f = s − s̄` (free variables zero).
pub fn section_difference(
    e: &Extension,
    sp: &SectionPair,
    sp_bar: &SectionPair,
) -> Result<(Mat, Mat)> {
    let (v, g) = (e.top(), e.g());
    let f0 = solve_equivariant(&e.xmod.d0, &(&sp.s0 - &sp_bar.s0), &v.alpha, &g.alpha);
    let f1 = solve_equivariant(&e.xmod.d1, &(&sp.s1 - &sp_bar.s1), &v.beta, &g.beta);
    match (f0, f1) {
        (Some(f0), Some(f1)) => Ok((f0, f1)),
        _ => Err(Error::SectionDifferenceNotInImage),
    }
}

/// The correction λ with `∂λ = ∂(ω − ω̄)`, V-valued. With `s = s̄ + ∂f` and
/// ρ pulled back along `s̄`:
///
/// - `λ0(a1,a2) = ρ(s̄a1)f0a2 + ρ(s̄a2)f0a1 + f0a1·f0a2 − f0(a1a2)`
/// - `λ1(a,b) = ρ(s̄a)f1b + ρ(s̄b)f0a + f0a·f1b − f1(ab)`
/// - `λ2(b1,b2) = ρ(s̄b1)f1b2 − ρ(s̄b2)f1b1 + [f1b1, f1b2] − f0[b1,b2]`
pub fn lambda_cochain(e: &Extension, sp: &SectionPair, sp_bar: &SectionPair) -> Result<Cochain2> {
    e.check_sections(sp)?;
    e.check_sections(sp_bar)?;
    let (f0, f1) = section_difference(e, sp, sp_bar)?;
    let (v, g) = (e.top(), e.g());
    let rho = e.xmod.rep().pullback(&sp_bar.s0, &sp_bar.s1);
    let (g0, g1) = (g.dim_even, g.dim_odd);
    let fx: Vec<Vector> = (0..g0).map(|i| f0.col(i)).collect();
    let fy: Vec<Vector> = (0..g1).map(|i| f1.col(i)).collect();
    let w0 = Tensor3::from_fn(g0, g0, v.dim_even, |i, j| {
        let t = vadd(&rho.r0e(&g.e(i), &fx[j]), &rho.r0e(&g.e(j), &fx[i]));
        let t = vadd(&t, &v.ee(&fx[i], &fx[j]));
        vsub(&t, &f0.apply(&g.ee(&g.e(i), &g.e(j))))
    });
    let w1 = Tensor3::from_fn(g0, g1, v.dim_odd, |i, j| {
        let t = vadd(&rho.r0o(&g.e(i), &fy[j]), &rho.r1e(&g.o(j), &fx[i]));
        let t = vadd(&t, &v.eo(&fx[i], &fy[j]));
        vsub(&t, &f1.apply(&g.eo(&g.e(i), &g.o(j))))
    });
    let w2 = Tensor3::from_fn(g1, g1, v.dim_even, |i, j| {
        let t = vsub(&rho.r1o(&g.o(i), &fy[j]), &rho.r1o(&g.o(j), &fy[i]));
        let t = vadd(&t, &v.br(&fy[i], &fy[j]));
        vsub(&t, &f0.apply(&g.br(&g.o(i), &g.o(j))))
    });
    let lambda = Cochain2 {
        values: ValueSpace::Module,
        w0,
        w1,
        w2,
    };
    let mu = omega(e, sp)?.sub(&omega(e, sp_bar)?).sub(&lambda);
    let d = (&e.xmod.d0, &e.xmod.d1);
    let mut c = Collector::default();
    let zero = |n: usize| zero_vec(n);
    for (name, t, dm) in [
        ("w0", &mu.w0, d.0),
        ("w1", &mu.w1, d.1),
        ("w2", &mu.w2, d.0),
    ] {
        let (d1, d2, _) = t.dims();
        for i in 0..d1 {
            for j in 0..d2 {
                c.check(name, &[i, j], dm.apply(&t.slice(i, j)), zero(dm.rows()));
            }
        }
    }
    let reports = c.finish();
    if !reports.is_empty() {
        return Err(Error::Postcondition {
            what: "boundary of ω − ω̄ − λ vanishes".into(),
            reports,
        });
    }
    Ok(lambda)
}

fn compare3(name: &str, lhs: &Cochain3, rhs: &Cochain3) -> Vec<IdentityReport> {
    let mut c = Collector::default();
    for (idx, (l, r)) in lhs
        .components()
        .into_iter()
        .zip(rhs.components())
        .enumerate()
    {
        let d = l.dims();
        for i in 0..d[0] {
            for j in 0..d[1] {
                for k in 0..d[2] {
                    c.check(
                        &format!("{name}{idx}"),
                        &[i, j, k],
                        l.slice(i, j, k),
                        r.slice(i, j, k),
                    );
                }
            }
        }
    }
    c.finish()
}

/// `h − h̄ = d(ω − ω̄ − λ)` for the sections of two seeds.
pub fn section_independence_check(e: &Extension, seed1: u64, seed2: u64) -> Result<CheckOutcome> {
    let sp = choose_sections(e, seed1)?;
    let spb = choose_sections(e, seed2)?;
    section_independence_for(e, &sp, &spb)
}

/// As [`section_independence_check`] for explicit sections sharing σ.
pub fn section_independence_for(
    e: &Extension,
    sp: &SectionPair,
    spb: &SectionPair,
) -> Result<CheckOutcome> {
    let h = cocycle_h(e, sp)?;
    let hb = cocycle_h(e, spb)?;
    let lambda = lambda_cochain(e, sp, spb)?;
    let mu = omega(e, sp)?.sub(&omega(e, spb)?).sub(&lambda);
    let dmu = coboundary_d2(e, &e.cochain2_to_kernel(&mu)?)?;
    Ok(CheckOutcome::from_reports(compare3(
        "h-difference-",
        &h.sub(&hb),
        &dmu,
    )))
}

/// Sections on the target of `m` induced from `sp`: `ψ s` and the target's
/// canonical σ.
pub fn transported_sections(et: &Extension, m: &XModMorphism, sp: &SectionPair) -> SectionPair {
    SectionPair {
        seed: sp.seed,
        s0: &m.psi.0 * &sp.s0,
        s1: &m.psi.1 * &sp.s1,
        sigma0: et.canonical.sigma0.clone(),
        sigma1: et.canonical.sigma1.clone(),
    }
}

/// The morphism must be a crossed-module morphism inducing the identity on
/// the kernels and on the cokernels (in their canonical coordinates).
fn check_ladder(e: &Extension, et: &Extension, m: &XModMorphism) -> Result<()> {
    let r = check_xmod_morphism(m)?;
    if !r.is_empty() {
        return Err(Error::LadderDoesNotCommute(format!(
            "not a crossed-module morphism ({} failing instances)",
            r.len()
        )));
    }
    let on_kernel = |phi: &Mat, k: &Mat, kt: &Mat| -> bool {
        k.columns()
            .iter()
            .enumerate()
            .all(|(i, c)| coords_in(kt, &phi.apply(c)) == Some(unit_vec(kt.cols(), i)))
            && k.cols() == kt.cols()
    };
    if !on_kernel(&m.phi.0, &e.kc.m0, &et.kc.m0) || !on_kernel(&m.phi.1, &e.kc.m1, &et.kc.m1) {
        return Err(Error::LadderDoesNotCommute(
            "not the identity on the kernel".into(),
        ));
    }
    let on_coker = (&(&et.kc.pi0 * &m.psi.0) * &e.kc.lift0).is_identity()
        && (&(&et.kc.pi1 * &m.psi.1) * &e.kc.lift1).is_identity();
    if !on_coker {
        return Err(Error::LadderDoesNotCommute(
            "not the identity on the cokernel".into(),
        ));
    }
    Ok(())
}

/// For a morphism `m: e → ẽ` inducing identities on kernel and cokernel:
/// `φh − h̃ = dθ` with `θ = (φσ − σ̃ψ)(defect of s)`.
pub fn equivalence_theta_check(
    e: &Extension,
    et: &Extension,
    m: &XModMorphism,
    sp: &SectionPair,
    spt: &SectionPair,
) -> Result<CheckOutcome> {
    check_ladder(e, et, m)?;
    e.check_sections(sp)?;
    et.check_sections(spt)?;
    let g = e.g();
    let (g0, g1) = (g.dim_even, g.dim_odd);
    let vt = et.top();
    let (img0, img1) = (&e.kc.img0, &e.kc.img1);
    let (timg0, timg1) = (&et.kc.img0, &et.kc.img1);
    let (p0, p1, q0, q1) = (&m.phi.0, &m.phi.1, &m.psi.0, &m.psi.1);
    let theta = |z: Vector, p: &Mat, q: &Mat, sg: &Mat, tsg: &Mat, im: &Mat, tim: &Mat| {
        let a = p.apply(&e.sigma_apply(sg, im, &z, "source defect")?);
        let b = et.sigma_apply(tsg, tim, &q.apply(&z), "target defect")?;
        Ok::<Vector, Error>(vsub(&a, &b))
    };
    let th = Cochain2 {
        values: ValueSpace::Module,
        w0: try_tensor3(g0, g0, vt.dim_even, |i, j| {
            let z = e.defect0(&sp.s0, &g.e(i), &g.e(j));
            theta(z, p0, q0, &sp.sigma0, &spt.sigma0, img0, timg0)
        })?,
        w1: try_tensor3(g0, g1, vt.dim_odd, |i, j| {
            let z = e.defect1(&sp.s0, &sp.s1, &g.e(i), &g.o(j));
            theta(z, p1, q1, &sp.sigma1, &spt.sigma1, img1, timg1)
        })?,
        w2: try_tensor3(g1, g1, vt.dim_even, |i, j| {
            let z = e.defect2(&sp.s0, &sp.s1, &g.o(i), &g.o(j));
            theta(z, p0, q0, &sp.sigma0, &spt.sigma0, img0, timg0)
        })?,
    };
    let dtheta = coboundary_d2(et, &et.cochain2_to_kernel(&th)?)?;
    let h = cocycle_h(e, sp)?;
    let ht = cocycle_h(et, spt)?;
    // φ h in the target's kernel coordinates; φ is the identity there.
    let moved = Cochain3 {
        values: ValueSpace::Kernel,
        ..h
    };
    Ok(CheckOutcome::from_reports(compare3(
        "h-transport-",
        &moved.sub(&ht),
        &dtheta,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{derived_extension_xmod, k3, split_extension_xmod};
    use crate::xmod::{identity_xmod, zero_xmod};

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_extensions() {
        let k = k3(&q("2")).unwrap();
        let e = build_extension(&identity_xmod(&k)).unwrap();
        assert_eq!(e.kernel_dims(), (0, 0));
        assert_eq!((e.g().dim_even, e.g().dim_odd), (0, 0));
        let sp = choose_sections(&e, 0).unwrap();
        assert_eq!(sp.s0.cols() + sp.s1.cols(), 0);
        assert!(cocycle_h(&e, &sp).unwrap().is_zero());
        assert!(section_independence_check(&e, 1, 2).unwrap().holds);

        let e = build_extension(&zero_xmod(&k)).unwrap();
        assert_eq!(e.kernel_dims(), (0, 0));
        assert_eq!(e.g().m00(), k.m00());
    }

    #[test]
    fn split_extension_has_zero_cocycle() {
        let e = build_extension(&split_extension_xmod().unwrap()).unwrap();
        assert!(e.kernel_dims().0 + e.kernel_dims().1 > 0);
        let sp = choose_sections(&e, 0).unwrap();
        assert!(omega(&e, &sp).unwrap().is_zero());
        assert!(cocycle_h(&e, &sp).unwrap().is_zero());
    }

    #[test]
    fn derived_extension_cocycle_is_nonzero_in_every_component() {
        let e = build_extension(&derived_extension_xmod().unwrap()).unwrap();
        assert_eq!(e.kernel_dims(), (3, 3));
        assert_eq!((e.g().dim_even, e.g().dim_odd), (3, 3));
        let sp = choose_sections(&e, 1).unwrap();
        assert!(!omega(&e, &sp).unwrap().is_zero());
        let h = cocycle_h(&e, &sp).unwrap();
        assert!(h.components().iter().all(|t| !t.is_zero()));
    }

    #[test]
    fn seeds_give_different_sections() {
        let e = build_extension(&derived_extension_xmod().unwrap()).unwrap();
        let (a, b) = (
            choose_sections(&e, 1).unwrap(),
            choose_sections(&e, 2).unwrap(),
        );
        assert_ne!(a.s0, b.s0);
        assert_ne!(a.s1, b.s1);
        let (f0, f1) = section_difference(&e, &a, &b).unwrap();
        assert!(!f0.is_zero() && !f1.is_zero());
    }

    #[test]
    fn equal_sections_give_zero_lambda() {
        let e = build_extension(&derived_extension_xmod().unwrap()).unwrap();
        let sp = choose_sections(&e, 3).unwrap();
        assert!(lambda_cochain(&e, &sp, &sp).unwrap().is_zero());
        assert!(section_independence_check(&e, 3, 3).unwrap().holds);
    }

    #[test]
    fn change_of_sections_identity_holds() {
        let e = build_extension(&derived_extension_xmod().unwrap()).unwrap();
        let out = section_independence_check(&e, 1, 2).unwrap();
        assert!(out.holds, "{:?}", out.reports.first());
    }

    #[test]
    fn zero_theta_has_zero_coboundary() {
        let e = build_extension(&derived_extension_xmod().unwrap()).unwrap();
        let (m0, m1) = e.kernel_dims();
        let z = Cochain2::zero(ValueSpace::Kernel, e.g(), m0, m1);
        assert!(coboundary_d2(&e, &z).unwrap().is_zero());
    }
}

#[cfg(test)]
mod equivalence_tests {
    use super::*;
    use crate::corpus::{derived_extension_xmod, equivalent_pair};

    #[test]
    fn identity_morphism_with_other_sigma() {
        let x = derived_extension_xmod().unwrap();
        let e = build_extension(&x).unwrap();
        let sp = choose_sections(&e, 1).unwrap();
        // σ' = σ + (kernel-valued equivariant map) is still a section of ∂.
        let mut spt = sp.clone();
        let shift0 = kernel_shift(&e.kc.m0, &e.top().alpha, &e.kc.img0, &e.base().alpha);
        let shift1 = kernel_shift(&e.kc.m1, &e.top().beta, &e.kc.img1, &e.base().beta);
        assert!(!shift0.is_zero() || !shift1.is_zero());
        spt.sigma0 = &spt.sigma0 + &shift0;
        spt.sigma1 = &spt.sigma1 + &shift1;
        let out = equivalence_theta_check(&e, &e, &XModMorphism::identity(&x), &sp, &spt).unwrap();
        assert!(out.holds, "{:?}", out.reports.first());
    }

    /// A nonzero equivariant map from image coordinates into the kernel.
    fn kernel_shift(k: &Mat, tw_v: &Mat, img: &Mat, tw_a: &Mat) -> Mat {
        let tw_n = restrict_twist(tw_a, img).unwrap();
        let tw_k = restrict_twist(tw_v, k).unwrap();
        let y = crate::exactq::commuting_maps(&tw_k, &tw_n)
            .into_iter()
            .fold(Mat::zeros(k.cols(), img.cols()), |acc, m| &acc + &m);
        k * &y
    }

    #[test]
    fn transported_pair_theta_identity() {
        let x = derived_extension_xmod().unwrap();
        let pair = equivalent_pair(&x).unwrap();
        let e = build_extension(&pair.source).unwrap();
        let et = build_extension(&pair.target).unwrap();
        for seed in [0, 1, 2] {
            let sp = choose_sections(&e, seed).unwrap();
            let spt = transported_sections(&et, &pair.morphism, &sp);
            let out = equivalence_theta_check(&e, &et, &pair.morphism, &sp, &spt).unwrap();
            assert!(out.holds, "seed {seed}: {:?}", out.reports.first());
        }
    }
}
