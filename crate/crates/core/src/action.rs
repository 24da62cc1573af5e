//! Actions of one algebra on another and the semidirect product.

use crate::error::{Error, Result};
use crate::exactq::{unit_vec, vadd, vscale, vsub, Mat, Scalar, Vector};
use crate::hla::{check_morphism, check_subalgebra, validate_hla, Hla};
use crate::report::{Collector, IdentityReport};
use crate::representation::{sum_algebra, validate_rep, HomModule};

/// Identity family names used in reports. `x`, `y` act; `u` even and `w`
/// odd are acted on, with the acted algebra's own twists.
pub mod names {
    /// `ρ0(αx)(u1·u2) = ρ0(x)u1·αu2`
    pub const EVEN_ON_EVEN_PRODUCT: &str = "even-acts-on-even-product";
    /// `ρ0(αx)(u·w) = ½ρ0(x)u·βw`
    pub const EVEN_ON_MIXED_PRODUCT: &str = "even-acts-on-mixed-product";
    /// `ρ1(y)(u2)·αu1 = ½ρ1(βy)(u1·u2)`
    pub const ODD_ON_EVEN_PRODUCT: &str = "odd-acts-on-even-product";
    /// `ρ0(x)(w)·αu = ½ρ0(x)u·βw`
    pub const EVEN_MIXED_BALANCE: &str = "even-acts-mixed-balance";
    /// `ρ0(αx)[w1,w2] = [ρ0(x)w1, βw2] + [βw1, ρ0(x)w2]`
    pub const EVEN_ON_BRACKET: &str = "even-acts-on-bracket";
    /// `ρ1(βy)(u·w) = αu·ρ1(y)w − [ρ1(y)u, βw]`
    pub const ODD_ON_MIXED_PRODUCT: &str = "odd-acts-on-mixed-product";
    /// `ρ1(βy)[w1,w2] = βw1·ρ1(y)w2 − βw2·ρ1(y)w1`
    pub const ODD_ON_BRACKET: &str = "odd-acts-on-bracket";

    pub const ALL: [&str; 7] = [
        EVEN_ON_EVEN_PRODUCT,
        EVEN_ON_MIXED_PRODUCT,
        ODD_ON_EVEN_PRODUCT,
        EVEN_MIXED_BALANCE,
        EVEN_ON_BRACKET,
        ODD_ON_MIXED_PRODUCT,
        ODD_ON_BRACKET,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    pub acting: Hla,
    pub acted: Hla,
    pub rep: HomModule,
}

impl Action {
    pub fn new(acting: Hla, acted: Hla, rep: HomModule) -> Result<Self> {
        let act = Action { acting, acted, rep };
        act.check_shape()?;
        Ok(act)
    }

    /// Zero action carrying the acted algebra's twists.
    pub fn zero(acting: &Hla, acted: &Hla) -> Self {
        let mut rep = HomModule::zero(acting, acted.dim_even, acted.dim_odd);
        rep.alpha_v = acted.alpha.clone();
        rep.beta_v = acted.beta.clone();
        Action {
            acting: acting.clone(),
            acted: acted.clone(),
            rep,
        }
    }

    /// Adjoint action of `a` on itself.
    pub fn adjoint(a: &Hla) -> Self {
        Action {
            acting: a.clone(),
            acted: a.clone(),
            rep: HomModule::adjoint(a),
        }
    }

    /// Adjoint action of `a` on the ideal spanned by the columns of `b0`, `b1`.
    pub fn adjoint_on_ideal(a: &Hla, b0: &Mat, b1: &Mat) -> Result<Self> {
        let rep = HomModule::adjoint_on_ideal(a, b0, b1)?;
        let acted = a.restrict(b0, b1)?.with_name(&format!("{}-ideal", a.name));
        Ok(Action {
            acting: a.clone(),
            acted,
            rep,
        })
    }

    pub fn check_shape(&self) -> Result<()> {
        self.acting.check_dims()?;
        self.acted.check_dims()?;
        self.rep.check_dims(&self.acting)?;
        if (self.rep.dim_even, self.rep.dim_odd) != (self.acted.dim_even, self.acted.dim_odd) {
            return Err(Error::Dimension(format!(
                "module dims ({}, {}) differ from acted algebra dims ({}, {})",
                self.rep.dim_even, self.rep.dim_odd, self.acted.dim_even, self.acted.dim_odd
            )));
        }
        if self.rep.alpha_v != self.acted.alpha || self.rep.beta_v != self.acted.beta {
            return Err(Error::Dimension(
                "twist mismatch: module twists differ from the acted algebra's".into(),
            ));
        }
        Ok(())
    }
}

/// Evaluate the seven compatibility families. With `recheck` the acting
/// algebra, the acted algebra and the representation are validated first
/// and their reports prepended under `acting:`, `acted:` and `rep:`.
pub fn validate_action(act: &Action, recheck: bool) -> Result<Vec<IdentityReport>> {
    use names::*;
    act.check_shape()?;
    let (a, b, v) = (&act.acting, &act.acted, &act.rep);
    let mut out = Vec::new();
    if recheck {
        out.extend(crate::report::prefixed("acting:", validate_hla(a)?));
        out.extend(crate::report::prefixed("acted:", validate_hla(b)?));
        out.extend(crate::report::prefixed("rep:", validate_rep(a, v)?));
    }
    let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, b.dim_even, b.dim_odd);
    let xs: Vec<Vector> = (0..n0).map(|i| a.e(i)).collect();
    let ys: Vec<Vector> = (0..n1).map(|i| a.o(i)).collect();
    let us: Vec<Vector> = (0..m0).map(|i| unit_vec(m0, i)).collect();
    let ws: Vec<Vector> = (0..m1).map(|i| unit_vec(m1, i)).collect();
    let ax: Vec<Vector> = xs.iter().map(|x| a.tw0(x)).collect();
    let by: Vec<Vector> = ys.iter().map(|y| a.tw1(y)).collect();
    let au: Vec<Vector> = us.iter().map(|u| b.tw0(u)).collect();
    let bw: Vec<Vector> = ws.iter().map(|w| b.tw1(w)).collect();
    let half = Scalar::half();
    let mut c = Collector::default();

    for i in 0..n0 {
        for j in 0..m0 {
            let xu = v.r0e(&xs[i], &us[j]);
            for k in 0..m0 {
                let lhs = v.r0e(&ax[i], &b.ee(&us[j], &us[k]));
                c.check(EVEN_ON_EVEN_PRODUCT, &[i, j, k], lhs, b.ee(&xu, &au[k]));
            }
        }
    }
    for i in 0..n0 {
        for j in 0..m0 {
            let xu = v.r0e(&xs[i], &us[j]);
            for k in 0..m1 {
                let lhs = v.r0o(&ax[i], &b.eo(&us[j], &ws[k]));
                let rhs = vscale(&half, &b.eo(&xu, &bw[k]));
                c.check(EVEN_ON_MIXED_PRODUCT, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..m0 {
            for k in 0..m0 {
                let lhs = b.eo(&au[j], &v.r1e(&ys[i], &us[k]));
                let rhs = vscale(&half, &v.r1e(&by[i], &b.ee(&us[j], &us[k])));
                c.check(ODD_ON_EVEN_PRODUCT, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..m0 {
            let xu = v.r0e(&xs[i], &us[j]);
            for k in 0..m1 {
                let lhs = b.eo(&au[j], &v.r0o(&xs[i], &ws[k]));
                let rhs = vscale(&half, &b.eo(&xu, &bw[k]));
                c.check(EVEN_MIXED_BALANCE, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..m1 {
            for k in 0..m1 {
                let lhs = v.r0e(&ax[i], &b.br(&ws[j], &ws[k]));
                let rhs = vadd(
                    &b.br(&v.r0o(&xs[i], &ws[j]), &bw[k]),
                    &b.br(&bw[j], &v.r0o(&xs[i], &ws[k])),
                );
                c.check(EVEN_ON_BRACKET, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..m0 {
            for k in 0..m1 {
                let lhs = v.r1o(&by[i], &b.eo(&us[j], &ws[k]));
                let rhs = vsub(
                    &b.ee(&au[j], &v.r1o(&ys[i], &ws[k])),
                    &b.br(&v.r1e(&ys[i], &us[j]), &bw[k]),
                );
                c.check(ODD_ON_MIXED_PRODUCT, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..m1 {
            for k in 0..m1 {
                let lhs = v.r1e(&by[i], &b.br(&ws[j], &ws[k]));
                let rhs = vsub(
                    &b.eo(&v.r1o(&ys[i], &ws[k]), &bw[j]),
                    &b.eo(&v.r1o(&ys[i], &ws[j]), &bw[k]),
                );
                c.check(ODD_ON_BRACKET, &[i, j, k], lhs, rhs);
            }
        }
    }
    out.extend(c.finish());
    Ok(out)
}

/// The semidirect product with its structure maps. Basis order: acting
/// algebra first, then acted, in each parity.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub algebra: Hla,
    /// Inclusion of the acting algebra.
    pub incl_acting: (Mat, Mat),
    /// Inclusion of the acted algebra (an ideal).
    pub incl_acted: (Mat, Mat),
    /// Projection onto the acting algebra.
    pub proj: (Mat, Mat),
}

/// The algebra on `𝔞 ⊕ V` with action and internal products, without any
/// validity checks.
pub fn semidirect_unchecked(act: &Action) -> Result<Hla> {
    act.check_shape()?;
    let alg = sum_algebra(&act.acting, &act.rep, Some(&act.acted))?;
    Ok(alg.with_name(&format!("{}|x{}", act.acting.name, act.acted.name)))
}

fn inclusions(n: usize, m: usize) -> (Mat, Mat, Mat) {
    let first = Mat::identity(n).vcat(&Mat::zeros(m, n));
    let second = Mat::zeros(n, m).vcat(&Mat::identity(m));
    let proj = Mat::identity(n).hcat(&Mat::zeros(n, m));
    (first, second, proj)
}

/// Semidirect product of a valid action. The result is checked to be a
/// valid algebra with the acting algebra as a subalgebra and the acted one
/// as an ideal.
pub fn semidirect(act: &Action) -> Result<Semidirect> {
    let reports = validate_action(act, false)?;
    if !reports.is_empty() {
        return Err(Error::InvalidAction(reports));
    }
    let algebra = semidirect_unchecked(act)?;
    let post = |what: &str, reports: Vec<IdentityReport>| -> Result<()> {
        if reports.is_empty() {
            Ok(())
        } else {
            Err(Error::Postcondition {
                what: what.into(),
                reports,
            })
        }
    };
    post("semidirect product is an algebra", validate_hla(&algebra)?)?;
    let (a, b) = (&act.acting, &act.acted);
    let (i0, j0, p0) = inclusions(a.dim_even, b.dim_even);
    let (i1, j1, p1) = inclusions(a.dim_odd, b.dim_odd);
    post(
        "inclusion of the acting algebra",
        check_morphism(a, &algebra, &i0, &i1)?,
    )?;
    post("projection", check_morphism(&algebra, a, &p0, &p1)?)?;
    let ideal = check_subalgebra(&algebra, &j0, &j1)?;
    if !ideal.ideal {
        return Err(Error::Postcondition {
            what: "acted algebra is an ideal".into(),
            reports: ideal.reports,
        });
    }
    Ok(Semidirect {
        algebra,
        incl_acting: (i0, i1),
        incl_acted: (j0, j1),
        proj: (p0, p1),
    })
}
