//! Crossed modules, their morphisms, kernel/cokernel data and constructors.

use crate::action::{validate_action, Action};
use crate::error::{Error, Result};
use crate::exactq::{coords_in, image_basis, is_zero_vec, kernel_basis, Mat, Tensor3, Vector};
use crate::hla::{check_morphism, check_subalgebra, quotient_hla, Hla};
use crate::report::{prefixed, Collector, IdentityReport};
use crate::representation::HomModule;

/// Identity family names used in reports. `x`, `y` in the base algebra,
/// `u`, `w` in the acted one.
pub mod names {
    /// `∂0 ρ0(x)u = x·∂0u`
    pub const EQUIVARIANT_X_U: &str = "equivariant-x-u";
    /// `∂1 ρ0(x)w = x·∂1w`
    pub const EQUIVARIANT_X_W: &str = "equivariant-x-w";
    /// `∂1 ρ1(y)u = y·∂0u`
    pub const EQUIVARIANT_Y_U: &str = "equivariant-y-u";
    /// `∂0 ρ1(y)w = [y, ∂1w]`
    pub const EQUIVARIANT_Y_W: &str = "equivariant-y-w";
    /// `ρ0(∂u1)u2 = u1·u2`
    pub const PEIFFER_U_U: &str = "peiffer-u-u";
    /// `ρ1(∂w1)w2 = [w1,w2]`
    pub const PEIFFER_W_W: &str = "peiffer-w-w";
    /// `ρ0(∂u)w = u·w`
    pub const PEIFFER_U_W: &str = "peiffer-u-w";
    /// `ρ1(∂w)u = u·w`
    pub const PEIFFER_W_U: &str = "peiffer-w-u";

    pub const ALL: [&str; 8] = [
        EQUIVARIANT_X_U,
        EQUIVARIANT_X_W,
        EQUIVARIANT_Y_U,
        EQUIVARIANT_Y_W,
        PEIFFER_U_U,
        PEIFFER_W_W,
        PEIFFER_U_W,
        PEIFFER_W_U,
    ];
}

/// `act.acting` is the base algebra 𝔞, `act.acted` the algebra V, and
/// `d0: V0 → 𝔞0`, `d1: V1 → 𝔞1` the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub act: Action,
    pub d0: Mat,
    pub d1: Mat,
}

impl CrossedModule {
    pub fn base(&self) -> &Hla {
        &self.act.acting
    }

    pub fn top(&self) -> &Hla {
        &self.act.acted
    }

    pub fn rep(&self) -> &HomModule {
        &self.act.rep
    }

    pub fn check_shape(&self) -> Result<()> {
        self.act.check_shape()?;
        let (a, v) = (self.base(), self.top());
        if self.d0.shape() != (a.dim_even, v.dim_even) {
            return Err(Error::Dimension(format!(
                "d0 is {:?}, expected {}x{}",
                self.d0.shape(),
                a.dim_even,
                v.dim_even
            )));
        }
        if self.d1.shape() != (a.dim_odd, v.dim_odd) {
            return Err(Error::Dimension(format!(
                "d1 is {:?}, expected {}x{}",
                self.d1.shape(),
                a.dim_odd,
                v.dim_odd
            )));
        }
        Ok(())
    }
}

/// Checks the action (prefix `action:`), the boundary as a morphism
/// (prefix `boundary:`), then the equivariance and Peiffer families.
pub fn validate_xmod(x: &CrossedModule) -> Result<Vec<IdentityReport>> {
    use names::*;
    x.check_shape()?;
    let (a, v, r) = (x.base(), x.top(), x.rep());
    let mut out = prefixed("action:", validate_action(&x.act, true)?);
    out.extend(prefixed("boundary:", check_morphism(v, a, &x.d0, &x.d1)?));
    let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, v.dim_even, v.dim_odd);
    let xs: Vec<Vector> = (0..n0).map(|i| a.e(i)).collect();
    let ys: Vec<Vector> = (0..n1).map(|i| a.o(i)).collect();
    let us: Vec<Vector> = (0..m0).map(|i| v.e(i)).collect();
    let ws: Vec<Vector> = (0..m1).map(|i| v.o(i)).collect();
    let du: Vec<Vector> = us.iter().map(|u| x.d0.apply(u)).collect();
    let dw: Vec<Vector> = ws.iter().map(|w| x.d1.apply(w)).collect();
    let mut c = Collector::default();
    for i in 0..n0 {
        for j in 0..m0 {
            let lhs = x.d0.apply(&r.r0e(&xs[i], &us[j]));
            c.check(EQUIVARIANT_X_U, &[i, j], lhs, a.ee(&xs[i], &du[j]));
        }
    }
    for i in 0..n0 {
        for j in 0..m1 {
            let lhs = x.d1.apply(&r.r0o(&xs[i], &ws[j]));
            c.check(EQUIVARIANT_X_W, &[i, j], lhs, a.eo(&xs[i], &dw[j]));
        }
    }
    for i in 0..n1 {
        for j in 0..m0 {
            let lhs = x.d1.apply(&r.r1e(&ys[i], &us[j]));
            c.check(EQUIVARIANT_Y_U, &[i, j], lhs, a.eo(&du[j], &ys[i]));
        }
    }
    for i in 0..n1 {
        for j in 0..m1 {
            let lhs = x.d0.apply(&r.r1o(&ys[i], &ws[j]));
            c.check(EQUIVARIANT_Y_W, &[i, j], lhs, a.br(&ys[i], &dw[j]));
        }
    }
    for i in 0..m0 {
        for j in 0..m0 {
            c.check(
                PEIFFER_U_U,
                &[i, j],
                r.r0e(&du[i], &us[j]),
                v.ee(&us[i], &us[j]),
            );
        }
    }
    for i in 0..m1 {
        for j in 0..m1 {
            c.check(
                PEIFFER_W_W,
                &[i, j],
                r.r1o(&dw[i], &ws[j]),
                v.br(&ws[i], &ws[j]),
            );
        }
    }
    for i in 0..m0 {
        for j in 0..m1 {
            c.check(
                PEIFFER_U_W,
                &[i, j],
                r.r0o(&du[i], &ws[j]),
                v.eo(&us[i], &ws[j]),
            );
        }
    }
    for i in 0..m1 {
        for j in 0..m0 {
            c.check(
                PEIFFER_W_U,
                &[i, j],
                r.r1e(&dw[i], &us[j]),
                v.eo(&us[j], &ws[i]),
            );
        }
    }
    out.extend(c.finish());
    Ok(out)
}

/// Pair of maps `phi: V → Ṽ`, `psi: 𝔞 → 𝔞̃` between crossed modules.
#[derive(Clone, Debug)]
pub struct XModMorphism {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub phi: (Mat, Mat),
    pub psi: (Mat, Mat),
}

impl XModMorphism {
    pub fn identity(x: &CrossedModule) -> Self {
        XModMorphism {
            source: x.clone(),
            target: x.clone(),
            phi: (
                Mat::identity(x.top().dim_even),
                Mat::identity(x.top().dim_odd),
            ),
            psi: (
                Mat::identity(x.base().dim_even),
                Mat::identity(x.base().dim_odd),
            ),
        }
    }

    pub fn check(&self) -> Result<Vec<IdentityReport>> {
        check_xmod_morphism(self)
    }

    /// Both components invertible.
    pub fn is_invertible(&self) -> bool {
        [&self.phi.0, &self.phi.1, &self.psi.0, &self.psi.1]
            .iter()
            .all(|m| m.rows() == m.cols() && m.inverse().is_some())
    }
}

/// Both components are morphisms (prefixes `phi:`, `psi:`), the squares
/// `ψ∂ = ∂̃φ` commute in each parity, and `φ(ρ(x)v) = ρ̃(ψx)(φv)`.
pub fn check_xmod_morphism(m: &XModMorphism) -> Result<Vec<IdentityReport>> {
    let (s, t) = (&m.source, &m.target);
    s.check_shape()?;
    t.check_shape()?;
    let (p0, p1) = (&m.phi.0, &m.phi.1);
    let (q0, q1) = (&m.psi.0, &m.psi.1);
    let mut out = prefixed("phi:", check_morphism(s.top(), t.top(), p0, p1)?);
    out.extend(prefixed(
        "psi:",
        check_morphism(s.base(), t.base(), q0, q1)?,
    ));
    let (a, v, r, rt) = (s.base(), s.top(), s.rep(), t.rep());
    let mut c = Collector::default();
    for j in 0..v.dim_even {
        let u = v.e(j);
        c.check(
            "square0",
            &[j],
            q0.apply(&s.d0.apply(&u)),
            t.d0.apply(&p0.apply(&u)),
        );
    }
    for j in 0..v.dim_odd {
        let w = v.o(j);
        c.check(
            "square1",
            &[j],
            q1.apply(&s.d1.apply(&w)),
            t.d1.apply(&p1.apply(&w)),
        );
    }
    for i in 0..a.dim_even {
        let (x, px) = (a.e(i), q0.apply(&a.e(i)));
        for j in 0..v.dim_even {
            let u = v.e(j);
            let lhs = p0.apply(&r.r0e(&x, &u));
            c.check(
                "action-even-on-even",
                &[i, j],
                lhs,
                rt.r0e(&px, &p0.apply(&u)),
            );
        }
        for j in 0..v.dim_odd {
            let w = v.o(j);
            let lhs = p1.apply(&r.r0o(&x, &w));
            c.check(
                "action-even-on-odd",
                &[i, j],
                lhs,
                rt.r0o(&px, &p1.apply(&w)),
            );
        }
    }
    for i in 0..a.dim_odd {
        let (y, py) = (a.o(i), q1.apply(&a.o(i)));
        for j in 0..v.dim_even {
            let u = v.e(j);
            let lhs = p1.apply(&r.r1e(&y, &u));
            c.check(
                "action-odd-on-even",
                &[i, j],
                lhs,
                rt.r1e(&py, &p0.apply(&u)),
            );
        }
        for j in 0..v.dim_odd {
            let w = v.o(j);
            let lhs = p0.apply(&r.r1o(&y, &w));
            c.check(
                "action-odd-on-odd",
                &[i, j],
                lhs,
                rt.r1o(&py, &p1.apply(&w)),
            );
        }
    }
    out.extend(c.finish());
    Ok(out)
}

/// Kernel of the boundary and cokernel algebra with its projection.
#[derive(Clone, Debug)]
pub struct KernelCokernel {
    /// Kernel bases of `d0`, `d1` (columns in V coordinates).
    pub m0: Mat,
    pub m1: Mat,
    /// Image bases of `d0`, `d1` and the pivot columns they came from.
    pub img0: Mat,
    pub img1: Mat,
    pub piv0: Vec<usize>,
    pub piv1: Vec<usize>,
    pub g: Hla,
    pub pi0: Mat,
    pub pi1: Mat,
    /// Complement bases in 𝔞 (a linear lift of `g`).
    pub lift0: Mat,
    pub lift1: Mat,
}

pub fn kernel_cokernel(x: &CrossedModule) -> Result<KernelCokernel> {
    x.check_shape()?;
    let (a, v) = (x.base(), x.top());
    let (m0, m1) = (kernel_basis(&x.d0), kernel_basis(&x.d1));
    let (img0, piv0) = image_basis(&x.d0);
    let (img1, piv1) = image_basis(&x.d1);
    let chk = check_subalgebra(a, &img0, &img1)?;
    if !chk.subalgebra || !chk.ideal {
        let twist_only = chk
            .reports
            .iter()
            .all(|r| r.identity.starts_with("twist-invariant"));
        return Err(if twist_only {
            Error::TwistDoesNotDescend
        } else {
            Error::ImageNotIdeal
        });
    }
    for (k, m) in m0.columns().iter().enumerate() {
        for j in 0..v.dim_even {
            if !is_zero_vec(&v.ee(m, &v.e(j))) {
                return Err(Error::KernelNotCentral(format!(
                    "even kernel {k} times even {j}"
                )));
            }
        }
        for j in 0..v.dim_odd {
            if !is_zero_vec(&v.eo(m, &v.o(j))) {
                return Err(Error::KernelNotCentral(format!(
                    "even kernel {k} times odd {j}"
                )));
            }
        }
    }
    for (k, m) in m1.columns().iter().enumerate() {
        for j in 0..v.dim_even {
            if !is_zero_vec(&v.eo(&v.e(j), m)) {
                return Err(Error::KernelNotCentral(format!(
                    "odd kernel {k} times even {j}"
                )));
            }
        }
        for j in 0..v.dim_odd {
            if !is_zero_vec(&v.br(m, &v.o(j))) {
                return Err(Error::KernelNotCentral(format!(
                    "odd kernel {k} bracket odd {j}"
                )));
            }
        }
    }
    let qt = quotient_hla(a, &img0, &img1).map_err(|e| match e {
        Error::NotIdeal => Error::ImageNotIdeal,
        e => e,
    })?;
    Ok(KernelCokernel {
        m0,
        m1,
        img0,
        img1,
        piv0,
        piv1,
        g: qt.algebra.with_name(&format!("coker({})", a.name)),
        pi0: qt.pi0,
        pi1: qt.pi1,
        lift0: qt.lift0,
        lift1: qt.lift1,
    })
}

/// `(𝔞, 𝔞, id)` with the adjoint action.
pub fn identity_xmod(a: &Hla) -> CrossedModule {
    CrossedModule {
        act: Action::adjoint(a),
        d0: Mat::identity(a.dim_even),
        d1: Mat::identity(a.dim_odd),
    }
}

/// `(0, 𝔞, 0)`.
pub fn zero_xmod(a: &Hla) -> CrossedModule {
    CrossedModule {
        act: Action::zero(a, &Hla::zero()),
        d0: Mat::zeros(a.dim_even, 0),
        d1: Mat::zeros(a.dim_odd, 0),
    }
}

/// Inclusion of the ideal spanned by the independent columns of `b0`, `b1`,
/// acted on adjointly.
pub fn ideal_inclusion(a: &Hla, b0: &Mat, b1: &Mat) -> Result<CrossedModule> {
    Ok(CrossedModule {
        act: Action::adjoint_on_ideal(a, b0, b1)?,
        d0: b0.clone(),
        d1: b1.clone(),
    })
}

/// For ideals `J ⊆ I` of `b` with `I·J = 0`: V = I, 𝔞 = b/J, the boundary is
/// the quotient map restricted to I, and 𝔞 acts through any linear lift.
pub fn from_nested_ideals(
    b: &Hla,
    i0: &Mat,
    i1: &Mat,
    j0: &Mat,
    j1: &Mat,
) -> Result<CrossedModule> {
    let ci = check_subalgebra(b, i0, i1)?;
    if !ci.ideal {
        return Err(Error::NotIdeal);
    }
    let qt = quotient_hla(b, j0, j1)?;
    let v = b.restrict(i0, i1)?;
    let (ic0, ic1) = (i0.columns(), i1.columns());
    for y in j0.columns() {
        for u in &ic0 {
            if !is_zero_vec(&b.ee(&y, u)) {
                return Err(Error::Structural("I·J is not zero".into()));
            }
        }
        for w in &ic1 {
            if !is_zero_vec(&b.eo(&y, w)) {
                return Err(Error::Structural("I·J is not zero".into()));
            }
        }
    }
    for y in j1.columns() {
        for u in &ic0 {
            if !is_zero_vec(&b.eo(u, &y)) {
                return Err(Error::Structural("I·J is not zero".into()));
            }
        }
        for w in &ic1 {
            if !is_zero_vec(&b.br(&y, w)) {
                return Err(Error::Structural("I·J is not zero".into()));
            }
        }
    }
    let a = qt.algebra.clone();
    let (l0, l1) = (qt.lift0.columns(), qt.lift1.columns());
    let (m0, m1) = (v.dim_even, v.dim_odd);
    let co0 = |z: Vector| coords_in(i0, &z).expect("ideal closure checked");
    let co1 = |z: Vector| coords_in(i1, &z).expect("ideal closure checked");
    let rep = HomModule {
        dim_even: m0,
        dim_odd: m1,
        alpha_v: v.alpha.clone(),
        beta_v: v.beta.clone(),
        rho0_even: Tensor3::from_fn(a.dim_even, m0, m0, |i, j| co0(b.ee(&l0[i], &ic0[j]))),
        rho0_odd: Tensor3::from_fn(a.dim_even, m1, m1, |i, j| co1(b.eo(&l0[i], &ic1[j]))),
        rho1_on_even: Tensor3::from_fn(a.dim_odd, m0, m1, |i, j| co1(b.eo(&ic0[j], &l1[i]))),
        rho1_on_odd: Tensor3::from_fn(a.dim_odd, m1, m0, |i, j| co0(b.br(&l1[i], &ic1[j]))),
    };
    Ok(CrossedModule {
        d0: &qt.pi0 * i0,
        d1: &qt.pi1 * i1,
        act: Action {
            acting: a,
            acted: v,
            rep,
        },
    })
}

fn inv(m: &Mat) -> Result<Mat> {
    m.inverse()
        .ok_or_else(|| Error::Structural("transport along a singular map".into()))
}

/// The crossed module in new coordinates `pv·v` on V and `pa·x` on 𝔞.
/// `(pv, pa)` is then an isomorphism from `x` to the result.
pub fn transport_xmod(
    x: &CrossedModule,
    pv: (&Mat, &Mat),
    pa: (&Mat, &Mat),
) -> Result<CrossedModule> {
    x.check_shape()?;
    let (a, v, r) = (x.base(), x.top(), x.rep());
    let (iv0, iv1, ia0, ia1) = (inv(pv.0)?, inv(pv.1)?, inv(pa.0)?, inv(pa.1)?);
    let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, v.dim_even, v.dim_odd);
    let acting = a.transport(pa.0, pa.1)?;
    let acted = v.transport(pv.0, pv.1)?;
    let rep = HomModule {
        dim_even: m0,
        dim_odd: m1,
        alpha_v: acted.alpha.clone(),
        beta_v: acted.beta.clone(),
        rho0_even: Tensor3::from_fn(n0, m0, m0, |i, j| {
            pv.0.apply(&r.r0e(&ia0.col(i), &iv0.col(j)))
        }),
        rho0_odd: Tensor3::from_fn(n0, m1, m1, |i, j| {
            pv.1.apply(&r.r0o(&ia0.col(i), &iv1.col(j)))
        }),
        rho1_on_even: Tensor3::from_fn(n1, m0, m1, |i, j| {
            pv.1.apply(&r.r1e(&ia1.col(i), &iv0.col(j)))
        }),
        rho1_on_odd: Tensor3::from_fn(n1, m1, m0, |i, j| {
            pv.0.apply(&r.r1o(&ia1.col(i), &iv1.col(j)))
        }),
    };
    Ok(CrossedModule {
        act: Action { acting, acted, rep },
        d0: &(pa.0 * &x.d0) * &iv0,
        d1: &(pa.1 * &x.d1) * &iv1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{k3, m4, m4_bundle};
    use crate::exactq::Scalar;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn basic_crossed_modules_are_valid() {
        let m = m4(&q("2")).unwrap();
        let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
        let inc = ideal_inclusion(&m, &Mat::zeros(1, 0), &a3).unwrap();
        assert!(validate_xmod(&inc).unwrap().is_empty());
        let k = k3(&q("2")).unwrap();
        assert!(validate_xmod(&identity_xmod(&k)).unwrap().is_empty());
        assert!(validate_xmod(&zero_xmod(&k)).unwrap().is_empty());
        assert!(validate_xmod(&m4_bundle(&q("2")).unwrap().xmod)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn morphism_examples() {
        let k = k3(&q("2")).unwrap();
        let x = identity_xmod(&k);
        assert!(XModMorphism::identity(&x).check().unwrap().is_empty());
        let mut zero = XModMorphism::identity(&x);
        zero.phi = (Mat::zeros(1, 1), Mat::zeros(2, 2));
        zero.psi = (Mat::zeros(1, 1), Mat::zeros(2, 2));
        assert!(zero.check().unwrap().is_empty());
        let mut bad = XModMorphism::identity(&x);
        bad.psi.0 = Mat::scalar(1, &q("2"));
        let r = bad.check().unwrap();
        let sq = r.iter().find(|r| r.identity == "square0").unwrap();
        assert_eq!(sq.lhs, vec![q("2")]);
        assert_eq!(sq.rhs, vec![q("1")]);
    }

    #[test]
    fn kernel_cokernel_examples() {
        let k = k3(&q("2")).unwrap();
        let kc = kernel_cokernel(&identity_xmod(&k)).unwrap();
        assert_eq!((kc.m0.cols(), kc.m1.cols()), (0, 0));
        assert_eq!((kc.g.dim_even, kc.g.dim_odd), (0, 0));
        let kc = kernel_cokernel(&zero_xmod(&k)).unwrap();
        assert_eq!(kc.g.m00(), k.m00());
        assert_eq!(kc.g.brk(), k.brk());
        assert!(kc.pi0.is_identity() && kc.pi1.is_identity());

        let m = m4(&q("2")).unwrap();
        let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
        let kc = kernel_cokernel(&ideal_inclusion(&m, &Mat::zeros(1, 0), &a3).unwrap()).unwrap();
        assert_eq!((kc.m0.cols(), kc.m1.cols()), (0, 0));
        let g = &kc.g;
        assert_eq!((g.dim_even, g.dim_odd), (1, 2));
        assert_eq!(g.br(&g.o(0), &g.o(1)), vec![q("1")]);
        assert!(is_zero_vec(&g.eo(&g.e(0), &g.o(0))));
    }

    #[test]
    fn transport_gives_isomorphic_crossed_module() {
        let b = m4_bundle(&q("2")).unwrap();
        let x = &b.xmod;
        let pv0 = Mat::identity(1);
        let pv1 = Mat::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[3, 0, 1]]);
        let pa0 = Mat::identity(1);
        let pa1 = Mat::from_ints(&[&[1, 0], &[0, 1]]);
        let y = transport_xmod(x, (&pv0, &pv1), (&pa0, &pa1)).unwrap();
        assert!(validate_xmod(&y).unwrap().is_empty());
        let iso = XModMorphism {
            source: x.clone(),
            target: y,
            phi: (pv0, pv1),
            psi: (pa0, pa1),
        };
        assert!(iso.check().unwrap().is_empty());
        assert!(iso.is_invertible());
    }
}
