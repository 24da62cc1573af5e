//! Representations of an algebra on a graded module with its own twists,
//! the adjoint representation and the direct-sum criterion.

use crate::error::{Error, Result};
use crate::exactq::{coords_in, unit_vec, vadd, vscale, vsub, Mat, Scalar, Tensor3, Vector};
use crate::hla::{validate_hla, Hla};
use crate::report::{Collector, IdentityReport};

/// Identity family names used in reports. `x` even and `y` odd in the
/// algebra, `u` even and `w` odd in the module.
pub mod names {
    /// `α_V ρ0(x)u = ρ0(αx) α_V u`
    pub const TWIST_EVEN_ON_EVEN: &str = "twist-even-on-even";
    /// `β_V ρ0(x)w = ρ0(αx) β_V w`
    pub const TWIST_EVEN_ON_ODD: &str = "twist-even-on-odd";
    /// `β_V ρ1(y)u = ρ1(βy) α_V u`
    pub const TWIST_ODD_ON_EVEN: &str = "twist-odd-on-even";
    /// `α_V ρ1(y)w = ρ1(βy) β_V w`
    pub const TWIST_ODD_ON_ODD: &str = "twist-odd-on-odd";
    /// `ρ0(αx1)ρ0(x2)u = ρ0(x1·x2) α_V u`
    pub const EVEN_EVEN_ON_EVEN: &str = "even-even-on-even";
    /// `ρ0(αx1)ρ0(x2)w = ½ρ0(x1·x2) β_V w`
    pub const EVEN_EVEN_ON_ODD: &str = "even-even-on-odd";
    /// `ρ0(αx)ρ1(y)u = ½ρ1(βy)ρ0(x)u`
    pub const EVEN_ODD_ON_EVEN: &str = "even-odd-on-even";
    /// `ρ1(x·y) α_V u = ½ρ1(βy)ρ0(x)u`
    pub const MIXED_PRODUCT_ON_EVEN: &str = "mixed-product-on-even";
    /// `ρ0(αx)ρ1(y)w = ρ1(x·y) β_V w + ρ1(βy)ρ0(x)w`
    pub const EVEN_ODD_ON_ODD: &str = "even-odd-on-odd";
    /// `ρ0([y1,y2]) α_V u = ρ1(βy1)ρ1(y2)u − ρ1(βy2)ρ1(y1)u`
    pub const BRACKET_ON_EVEN: &str = "bracket-on-even";
    /// `ρ0([y1,y2]) β_V w = −ρ1(βy1)ρ1(y2)w + ρ1(βy2)ρ1(y1)w`
    pub const BRACKET_ON_ODD: &str = "bracket-on-odd";

    pub const ALL: [&str; 11] = [
        TWIST_EVEN_ON_EVEN,
        TWIST_EVEN_ON_ODD,
        TWIST_ODD_ON_EVEN,
        TWIST_ODD_ON_ODD,
        EVEN_EVEN_ON_EVEN,
        EVEN_EVEN_ON_ODD,
        EVEN_ODD_ON_EVEN,
        MIXED_PRODUCT_ON_EVEN,
        EVEN_ODD_ON_ODD,
        BRACKET_ON_EVEN,
        BRACKET_ON_ODD,
    ];
}

/// Module data over an algebra with `n0` even and `n1` odd dimensions.
/// Tensors are indexed `[algebra basis][module basis] -> module coordinate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomModule {
    pub dim_even: usize,
    pub dim_odd: usize,
    pub alpha_v: Mat,
    pub beta_v: Mat,
    /// 𝔞0 × V0 → V0
    pub rho0_even: Tensor3,
    /// 𝔞0 × V1 → V1
    pub rho0_odd: Tensor3,
    /// 𝔞1 × V0 → V1
    pub rho1_on_even: Tensor3,
    /// 𝔞1 × V1 → V0
    pub rho1_on_odd: Tensor3,
}

impl HomModule {
    /// Zero action with identity twists.
    pub fn zero(a: &Hla, m0: usize, m1: usize) -> Self {
        HomModule {
            dim_even: m0,
            dim_odd: m1,
            alpha_v: Mat::identity(m0),
            beta_v: Mat::identity(m1),
            rho0_even: Tensor3::zeros(a.dim_even, m0, m0),
            rho0_odd: Tensor3::zeros(a.dim_even, m1, m1),
            rho1_on_even: Tensor3::zeros(a.dim_odd, m0, m1),
            rho1_on_odd: Tensor3::zeros(a.dim_odd, m1, m0),
        }
    }

    /// `ρ0(x) = x·−`, `ρ1(y)u = u·y`, `ρ1(y)w = [y,w]`.
    pub fn adjoint(a: &Hla) -> Self {
        HomModule {
            dim_even: a.dim_even,
            dim_odd: a.dim_odd,
            alpha_v: a.alpha.clone(),
            beta_v: a.beta.clone(),
            rho0_even: a.m00().clone(),
            rho0_odd: a.m01().clone(),
            rho1_on_even: a.m01().swap12(),
            rho1_on_odd: a.brk().clone(),
        }
    }

    /// Adjoint action of `a` on the ideal spanned by the independent columns
    /// of `b0`, `b1`, in the coordinates of those columns.
    pub fn adjoint_on_ideal(a: &Hla, b0: &Mat, b1: &Mat) -> Result<Self> {
        let chk = crate::hla::check_subalgebra(a, b0, b1)?;
        if !chk.ideal {
            return Err(Error::NotIdeal);
        }
        let (c0, c1) = (b0.columns(), b1.columns());
        let (m0, m1) = (c0.len(), c1.len());
        let co0 = |v: Vector| coords_in(b0, &v).expect("ideal closure checked");
        let co1 = |v: Vector| coords_in(b1, &v).expect("ideal closure checked");
        Ok(HomModule {
            dim_even: m0,
            dim_odd: m1,
            alpha_v: Mat::from_cols(m0, &c0.iter().map(|u| co0(a.tw0(u))).collect::<Vec<_>>()),
            beta_v: Mat::from_cols(m1, &c1.iter().map(|w| co1(a.tw1(w))).collect::<Vec<_>>()),
            rho0_even: Tensor3::from_fn(a.dim_even, m0, m0, |i, j| co0(a.ee(&a.e(i), &c0[j]))),
            rho0_odd: Tensor3::from_fn(a.dim_even, m1, m1, |i, j| co1(a.eo(&a.e(i), &c1[j]))),
            rho1_on_even: Tensor3::from_fn(a.dim_odd, m0, m1, |i, j| co1(a.eo(&c0[j], &a.o(i)))),
            rho1_on_odd: Tensor3::from_fn(a.dim_odd, m1, m0, |i, j| co0(a.br(&a.o(i), &c1[j]))),
        })
    }

    pub fn check_dims(&self, a: &Hla) -> Result<()> {
        let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, self.dim_even, self.dim_odd);
        let want = [
            ("rho0_even", &self.rho0_even, (n0, m0, m0)),
            ("rho0_odd", &self.rho0_odd, (n0, m1, m1)),
            ("rho1_on_even", &self.rho1_on_even, (n1, m0, m1)),
            ("rho1_on_odd", &self.rho1_on_odd, (n1, m1, m0)),
        ];
        for (name, t, d) in want {
            if t.dims() != d {
                return Err(Error::Dimension(format!(
                    "{name} has shape {:?}, expected {d:?}",
                    t.dims()
                )));
            }
        }
        if self.alpha_v.shape() != (m0, m0) {
            return Err(Error::Dimension(format!("alphaV: expected {m0}x{m0}")));
        }
        if self.beta_v.shape() != (m1, m1) {
            return Err(Error::Dimension(format!("betaV: expected {m1}x{m1}")));
        }
        Ok(())
    }

    pub fn r0e(&self, x: &[Scalar], u: &[Scalar]) -> Vector {
        self.rho0_even.apply(x, u)
    }

    pub fn r0o(&self, x: &[Scalar], w: &[Scalar]) -> Vector {
        self.rho0_odd.apply(x, w)
    }

    pub fn r1e(&self, y: &[Scalar], u: &[Scalar]) -> Vector {
        self.rho1_on_even.apply(y, u)
    }

    pub fn r1o(&self, y: &[Scalar], w: &[Scalar]) -> Vector {
        self.rho1_on_odd.apply(y, w)
    }

    /// The action pulled back along an algebra map with components `s0`, `s1`
    /// (columns are images of the source basis).
    pub fn pullback(&self, s0: &Mat, s1: &Mat) -> HomModule {
        let (g0, g1, m0, m1) = (s0.cols(), s1.cols(), self.dim_even, self.dim_odd);
        let (c0, c1) = (s0.columns(), s1.columns());
        HomModule {
            dim_even: m0,
            dim_odd: m1,
            alpha_v: self.alpha_v.clone(),
            beta_v: self.beta_v.clone(),
            rho0_even: Tensor3::from_fn(g0, m0, m0, |i, j| self.r0e(&c0[i], &unit_vec(m0, j))),
            rho0_odd: Tensor3::from_fn(g0, m1, m1, |i, j| self.r0o(&c0[i], &unit_vec(m1, j))),
            rho1_on_even: Tensor3::from_fn(g1, m0, m1, |i, j| self.r1e(&c1[i], &unit_vec(m0, j))),
            rho1_on_odd: Tensor3::from_fn(g1, m1, m0, |i, j| self.r1o(&c1[i], &unit_vec(m1, j))),
        }
    }
}

impl HomModule {
    /// Direct sum of two modules over the same algebra (block twists, block action).
    pub fn direct_sum(&self, other: &HomModule) -> HomModule {
        fn block(a: &Tensor3, b: &Tensor3) -> Tensor3 {
            let (n, p, q) = a.dims();
            let (_, r, t) = b.dims();
            Tensor3::from_fn(n, p + r, q + t, |i, j| {
                if j < p {
                    let mut v = a.slice(i, j);
                    v.extend(std::iter::repeat_n(Scalar::zero(), t));
                    v
                } else {
                    let mut v = vec![Scalar::zero(); q];
                    v.extend(b.slice(i, j - p));
                    v
                }
            })
        }
        HomModule {
            dim_even: self.dim_even + other.dim_even,
            dim_odd: self.dim_odd + other.dim_odd,
            alpha_v: self.alpha_v.block_diag(&other.alpha_v),
            beta_v: self.beta_v.block_diag(&other.beta_v),
            rho0_even: block(&self.rho0_even, &other.rho0_even),
            rho0_odd: block(&self.rho0_odd, &other.rho0_odd),
            rho1_on_even: block(&self.rho1_on_even, &other.rho1_on_even),
            rho1_on_odd: block(&self.rho1_on_odd, &other.rho1_on_odd),
        }
    }
}

/// Evaluate the eleven representation identity families on basis tuples.
pub fn validate_rep(a: &Hla, v: &HomModule) -> Result<Vec<IdentityReport>> {
    use names::*;
    a.check_dims()?;
    v.check_dims(a)?;
    let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, v.dim_even, v.dim_odd);
    let xs: Vec<Vector> = (0..n0).map(|i| a.e(i)).collect();
    let ys: Vec<Vector> = (0..n1).map(|i| a.o(i)).collect();
    let us: Vec<Vector> = (0..m0).map(|i| unit_vec(m0, i)).collect();
    let ws: Vec<Vector> = (0..m1).map(|i| unit_vec(m1, i)).collect();
    let ax: Vec<Vector> = xs.iter().map(|x| a.tw0(x)).collect();
    let by: Vec<Vector> = ys.iter().map(|y| a.tw1(y)).collect();
    let au: Vec<Vector> = us.iter().map(|u| v.alpha_v.apply(u)).collect();
    let bw: Vec<Vector> = ws.iter().map(|w| v.beta_v.apply(w)).collect();
    let half = Scalar::half();
    let mut c = Collector::default();

    for i in 0..n0 {
        for j in 0..m0 {
            let lhs = v.alpha_v.apply(&v.r0e(&xs[i], &us[j]));
            c.check(TWIST_EVEN_ON_EVEN, &[i, j], lhs, v.r0e(&ax[i], &au[j]));
        }
    }
    for i in 0..n0 {
        for j in 0..m1 {
            let lhs = v.beta_v.apply(&v.r0o(&xs[i], &ws[j]));
            c.check(TWIST_EVEN_ON_ODD, &[i, j], lhs, v.r0o(&ax[i], &bw[j]));
        }
    }
    for i in 0..n1 {
        for j in 0..m0 {
            let lhs = v.beta_v.apply(&v.r1e(&ys[i], &us[j]));
            c.check(TWIST_ODD_ON_EVEN, &[i, j], lhs, v.r1e(&by[i], &au[j]));
        }
    }
    for i in 0..n1 {
        for j in 0..m1 {
            let lhs = v.alpha_v.apply(&v.r1o(&ys[i], &ws[j]));
            c.check(TWIST_ODD_ON_ODD, &[i, j], lhs, v.r1o(&by[i], &bw[j]));
        }
    }
    for i in 0..n0 {
        for j in 0..n0 {
            let x12 = a.ee(&xs[i], &xs[j]);
            for k in 0..m0 {
                let lhs = v.r0e(&ax[i], &v.r0e(&xs[j], &us[k]));
                c.check(EVEN_EVEN_ON_EVEN, &[i, j, k], lhs, v.r0e(&x12, &au[k]));
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n0 {
            let x12 = a.ee(&xs[i], &xs[j]);
            for k in 0..m1 {
                let lhs = v.r0o(&ax[i], &v.r0o(&xs[j], &ws[k]));
                let rhs = vscale(&half, &v.r0o(&x12, &bw[k]));
                c.check(EVEN_EVEN_ON_ODD, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n1 {
            for k in 0..m0 {
                let lhs = v.r0o(&ax[i], &v.r1e(&ys[j], &us[k]));
                let rhs = vscale(&half, &v.r1e(&by[j], &v.r0e(&xs[i], &us[k])));
                c.check(EVEN_ODD_ON_EVEN, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n1 {
            let xy = a.eo(&xs[i], &ys[j]);
            for k in 0..m0 {
                let lhs = v.r1e(&xy, &au[k]);
                let rhs = vscale(&half, &v.r1e(&by[j], &v.r0e(&xs[i], &us[k])));
                c.check(MIXED_PRODUCT_ON_EVEN, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n1 {
            let xy = a.eo(&xs[i], &ys[j]);
            for k in 0..m1 {
                let lhs = v.r0e(&ax[i], &v.r1o(&ys[j], &ws[k]));
                let rhs = vadd(&v.r1o(&xy, &bw[k]), &v.r1o(&by[j], &v.r0o(&xs[i], &ws[k])));
                c.check(EVEN_ODD_ON_ODD, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            let b = a.br(&ys[i], &ys[j]);
            for k in 0..m0 {
                let lhs = v.r0e(&b, &au[k]);
                let rhs = vsub(
                    &v.r1o(&by[i], &v.r1e(&ys[j], &us[k])),
                    &v.r1o(&by[j], &v.r1e(&ys[i], &us[k])),
                );
                c.check(BRACKET_ON_EVEN, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            let b = a.br(&ys[i], &ys[j]);
            for k in 0..m1 {
                let lhs = v.r0o(&b, &bw[k]);
                let rhs = vsub(
                    &v.r1e(&by[j], &v.r1o(&ys[i], &ws[k])),
                    &v.r1e(&by[i], &v.r1o(&ys[j], &ws[k])),
                );
                c.check(BRACKET_ON_ODD, &[i, j, k], lhs, rhs);
            }
        }
    }
    Ok(c.finish())
}

/// Algebra on `𝔞 ⊕ V` (𝔞 block first in each parity) built from the action,
/// plus the internal products of `internal` when given.
pub(crate) fn sum_algebra(a: &Hla, v: &HomModule, internal: Option<&Hla>) -> Result<Hla> {
    a.check_dims()?;
    v.check_dims(a)?;
    let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, v.dim_even, v.dim_odd);
    if let Some(b) = internal {
        if (b.dim_even, b.dim_odd) != (m0, m1) {
            return Err(Error::Dimension(format!(
                "acted algebra has dims ({}, {}), module has ({m0}, {m1})",
                b.dim_even, b.dim_odd
            )));
        }
    }
    let (d0, d1) = (n0 + m0, n1 + m1);
    let split0 = |i: usize| -> (Vector, Vector) {
        let z = unit_vec(d0, i);
        (z[..n0].to_vec(), z[n0..].to_vec())
    };
    let split1 = |i: usize| -> (Vector, Vector) {
        let z = unit_vec(d1, i);
        (z[..n1].to_vec(), z[n1..].to_vec())
    };
    let join = |p: Vector, q: Vector| -> Vector { p.into_iter().chain(q).collect() };

    let m00 = Tensor3::from_fn(d0, d0, d0, |i, j| {
        let ((x1, u1), (x2, u2)) = (split0(i), split0(j));
        let mut vu = vadd(&v.r0e(&x1, &u2), &v.r0e(&x2, &u1));
        if let Some(b) = internal {
            vu = vadd(&vu, &b.ee(&u1, &u2));
        }
        join(a.ee(&x1, &x2), vu)
    });
    let m01 = Tensor3::from_fn(d0, d1, d1, |i, j| {
        let ((x, u), (y, w)) = (split0(i), split1(j));
        let mut vw = vadd(&v.r0o(&x, &w), &v.r1e(&y, &u));
        if let Some(b) = internal {
            vw = vadd(&vw, &b.eo(&u, &w));
        }
        join(a.eo(&x, &y), vw)
    });
    let brk = Tensor3::from_fn(d1, d1, d0, |i, j| {
        let ((y1, w1), (y2, w2)) = (split1(i), split1(j));
        let mut vu = vsub(&v.r1o(&y1, &w2), &v.r1o(&y2, &w1));
        if let Some(b) = internal {
            vu = vadd(&vu, &b.br(&w1, &w2));
        }
        join(a.br(&y1, &y2), vu)
    });
    Hla::from_parts(
        &format!("{}+module", a.name),
        a.alpha.block_diag(&v.alpha_v),
        a.beta.block_diag(&v.beta_v),
        m00,
        m01,
        brk,
    )
}

/// The algebra on `𝔞 ⊕ V` with no products internal to `V`. Validity of the
/// action is not required.
pub fn rep_to_algebra(a: &Hla, v: &HomModule) -> Result<Hla> {
    sum_algebra(a, v, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DirectSumCheck {
    pub rep_valid: bool,
    pub algebra_valid: bool,
}

/// Runs both sides of the criterion "V is a representation iff 𝔞 ⊕ V is an algebra".
pub fn direct_sum_criterion(a: &Hla, v: &HomModule) -> Result<DirectSumCheck> {
    let rep_valid = validate_rep(a, v)?.is_empty();
    let algebra_valid = validate_hla(&rep_to_algebra(a, v)?)?.is_empty();
    Ok(DirectSumCheck {
        rep_valid,
        algebra_valid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{k3, m4};
    use crate::report::families;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn corrupted_adjoint(a: &Hla) -> HomModule {
        let mut v = HomModule::adjoint(a);
        v.rho1_on_odd = v.rho1_on_odd.scale(&q("-1"));
        v
    }

    #[test]
    fn adjoint_and_zero_are_representations() {
        let a = k3(&q("2")).unwrap();
        assert!(validate_rep(&a, &HomModule::adjoint(&a))
            .unwrap()
            .is_empty());
        assert!(validate_rep(&a, &HomModule::zero(&a, 2, 3))
            .unwrap()
            .is_empty());
        let m = m4(&q("3")).unwrap();
        assert!(validate_rep(&m, &HomModule::adjoint(&m))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn negated_bracket_action_fails_bracket_on_even() {
        let a = k3(&q("2")).unwrap();
        let r = validate_rep(&a, &corrupted_adjoint(&a)).unwrap();
        let w = r
            .iter()
            .find(|r| r.identity == names::BRACKET_ON_EVEN && r.witness == vec![0, 1, 0])
            .expect("witness (a, b, ε)");
        // ρ0([a,b])ε = ½ε against the negated right side −½ε
        assert_eq!(w.lhs, vec![q("1/2")]);
        assert_eq!(w.rhs, vec![q("-1/2")]);
    }

    #[test]
    fn direct_sum_examples() {
        let a = k3(&q("2")).unwrap();
        let z = rep_to_algebra(&a, &HomModule::zero(&a, 1, 0)).unwrap();
        assert_eq!((z.dim_even, z.dim_odd), (2, 2));
        for i in 0..2 {
            assert!(z.ee(&z.e(1), &z.e(i)).iter().all(Scalar::is_zero));
        }
        let adj = rep_to_algebra(&a, &HomModule::adjoint(&a)).unwrap();
        assert_eq!((adj.dim_even, adj.dim_odd), (2, 4));
        assert!(validate_hla(&adj).unwrap().is_empty());
        let bad = rep_to_algebra(&a, &corrupted_adjoint(&a)).unwrap();
        let f = families(&validate_hla(&bad).unwrap());
        assert!(f.contains(crate::hla::names::BRACKET_DERIVATION));

        let both = |v: &HomModule| direct_sum_criterion(&a, v).unwrap();
        let yes = DirectSumCheck {
            rep_valid: true,
            algebra_valid: true,
        };
        assert_eq!(both(&HomModule::adjoint(&a)), yes);
        assert_eq!(both(&HomModule::zero(&a, 2, 1)), yes);
        let no = DirectSumCheck {
            rep_valid: false,
            algebra_valid: false,
        };
        assert_eq!(both(&corrupted_adjoint(&a)), no);
    }

    #[test]
    fn ideal_adjoint_and_pullback() {
        let m = m4(&q("2")).unwrap();
        let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
        let v = HomModule::adjoint_on_ideal(&m, &Mat::zeros(1, 0), &a3).unwrap();
        assert_eq!((v.dim_even, v.dim_odd), (0, 1));
        assert!(validate_rep(&m, &v).unwrap().is_empty());
        let adj = HomModule::adjoint(&m);
        let back = adj.pullback(&Mat::identity(1), &Mat::identity(3));
        assert_eq!(back, adj);
    }

    #[test]
    fn dimension_mismatch() {
        let a = k3(&q("2")).unwrap();
        let mut v = HomModule::zero(&a, 1, 1);
        v.alpha_v = Mat::identity(2);
        assert!(matches!(validate_rep(&a, &v), Err(Error::Dimension(_))));
    }
}
