//! Hom-Lie antialgebras stored by structure constants, the axiom verifier,
//! morphism and subalgebra/ideal checks, quotients and sub-structures.
//!
//! The even product is stored symmetric, the bracket antisymmetric and the
//! mixed product once as `even · odd`; `odd · even` is the same map.

use crate::error::{Error, Result};
use crate::exactq::{
    cokernel_complement, coords_in, is_zero_vec, unit_vec, vscale, vsub, Mat, Scalar, Tensor3,
    Vector,
};
use crate::report::{Collector, IdentityReport};

/// Identity family names used in reports.
pub mod names {
    /// `α(x1)·(x2·x3) = (x1·x2)·α(x3)`
    pub const EVEN_ASSOC: &str = "even-twisted-assoc";
    /// `α(x1)·(x2·y) = ½(x1·x2)·β(y)`
    pub const EVEN_ODD_HALF: &str = "even-odd-half-assoc";
    /// `α(x)·[y1,y2] = [x·y1, β(y2)] + [β(y1), x·y2]`
    pub const BRACKET_DERIVATION: &str = "bracket-derivation";
    /// `β(y1)·[y2,y3] + β(y2)·[y3,y1] + β(y3)·[y1,y2] = 0`
    pub const ODD_CYCLIC: &str = "odd-cyclic";
    /// `α(x1·x2) = α(x1)·α(x2)`
    pub const TWIST_MULT_EVEN: &str = "twist-mult-even";
    /// `β(x·y) = α(x)·β(y)`
    pub const TWIST_MULT_MIXED: &str = "twist-mult-mixed";
    /// `α([y1,y2]) = [β(y1), β(y2)]`
    pub const TWIST_MULT_BRACKET: &str = "twist-mult-bracket";

    pub const ALL: [&str; 7] = [
        EVEN_ASSOC,
        EVEN_ODD_HALF,
        BRACKET_DERIVATION,
        ODD_CYCLIC,
        TWIST_MULT_EVEN,
        TWIST_MULT_MIXED,
        TWIST_MULT_BRACKET,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hla {
    pub name: String,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub alpha: Mat,
    pub beta: Mat,
    m00: Tensor3,
    m01: Tensor3,
    brk: Tensor3,
}

impl Hla {
    /// All products zero, identity twists.
    pub fn new(name: &str, dim_even: usize, dim_odd: usize) -> Self {
        Hla {
            name: name.to_string(),
            dim_even,
            dim_odd,
            alpha: Mat::identity(dim_even),
            beta: Mat::identity(dim_odd),
            m00: Tensor3::zeros(dim_even, dim_even, dim_even),
            m01: Tensor3::zeros(dim_even, dim_odd, dim_odd),
            brk: Tensor3::zeros(dim_odd, dim_odd, dim_even),
        }
    }

    pub fn zero() -> Self {
        Hla::new("zero", 0, 0)
    }

    /// Assemble from raw tensors, checking shapes and the (anti)symmetry of storage.
    pub fn from_parts(
        name: &str,
        alpha: Mat,
        beta: Mat,
        m00: Tensor3,
        m01: Tensor3,
        brk: Tensor3,
    ) -> Result<Self> {
        let (n0, n1) = (alpha.rows(), beta.rows());
        let a = Hla {
            name: name.to_string(),
            dim_even: n0,
            dim_odd: n1,
            alpha,
            beta,
            m00,
            m01,
            brk,
        };
        a.check_dims()?;
        for (i, j, k, c) in a.m00.entries() {
            if &a.m00.get(j, i, k) != c {
                return Err(Error::Structural(format!(
                    "even product not symmetric at ({i},{j},{k})"
                )));
            }
        }
        for (i, j, k, c) in a.brk.entries() {
            if a.brk.get(j, i, k) != -c {
                return Err(Error::Structural(format!(
                    "bracket not antisymmetric at ({i},{j},{k})"
                )));
            }
        }
        Ok(a)
    }

    pub fn check_dims(&self) -> Result<()> {
        let (n0, n1) = (self.dim_even, self.dim_odd);
        if self.alpha.shape() != (n0, n0) {
            return Err(Error::Dimension(format!("alpha: expected {n0}x{n0}")));
        }
        if self.beta.shape() != (n1, n1) {
            return Err(Error::Dimension(format!("beta: expected {n1}x{n1}")));
        }
        if self.m00.dims() != (n0, n0, n0) {
            return Err(Error::Dimension("even_even tensor shape".into()));
        }
        if self.m01.dims() != (n0, n1, n1) {
            return Err(Error::Dimension("even_odd tensor shape".into()));
        }
        if self.brk.dims() != (n1, n1, n0) {
            return Err(Error::Dimension("odd_odd tensor shape".into()));
        }
        Ok(())
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn m00(&self) -> &Tensor3 {
        &self.m00
    }

    pub fn m01(&self) -> &Tensor3 {
        &self.m01
    }

    pub fn brk(&self) -> &Tensor3 {
        &self.brk
    }

    /// Sets `e_i·e_j = e_j·e_i` to `c` in coordinate `k`.
    pub fn set_even_even(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        self.m00.set(j, i, k, c.clone());
        self.m00.set(i, j, k, c);
    }

    /// Sets `e_i·o_j` (= `o_j·e_i`) to `c` in coordinate `k`.
    pub fn set_even_odd(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        self.m01.set(i, j, k, c);
    }

    /// Sets `[o_i,o_j] = -[o_j,o_i]` to `c` in coordinate `k`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> Result<()> {
        if i == j {
            if c.is_zero() {
                return Ok(());
            }
            return Err(Error::Structural(format!(
                "bracket [o{i},o{i}] must vanish (antisymmetry)"
            )));
        }
        self.brk.set(j, i, k, -&c);
        self.brk.set(i, j, k, c);
        Ok(())
    }

    pub fn e(&self, i: usize) -> Vector {
        unit_vec(self.dim_even, i)
    }

    pub fn o(&self, i: usize) -> Vector {
        unit_vec(self.dim_odd, i)
    }

    /// Even product `x1·x2`.
    pub fn ee(&self, x1: &[Scalar], x2: &[Scalar]) -> Vector {
        self.m00.apply(x1, x2)
    }

    /// Mixed product `x·y` (even times odd, lands odd).
    pub fn eo(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.m01.apply(x, y)
    }

    /// Bracket `[y1,y2]` of odd elements, lands even.
    pub fn br(&self, y1: &[Scalar], y2: &[Scalar]) -> Vector {
        self.brk.apply(y1, y2)
    }

    pub fn tw0(&self, x: &[Scalar]) -> Vector {
        self.alpha.apply(x)
    }

    pub fn tw1(&self, y: &[Scalar]) -> Vector {
        self.beta.apply(y)
    }

    /// The algebra transported along invertible maps `p0`, `p1` (new coordinates `p·x`).
    pub fn transport(&self, p0: &Mat, p1: &Mat) -> Result<Hla> {
        let (i0, i1) = match (p0.inverse(), p1.inverse()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Structural("transport along a singular map".into())),
        };
        let (n0, n1) = (self.dim_even, self.dim_odd);
        let (c0, c1) = (i0.columns(), i1.columns());
        let m00 = Tensor3::from_fn(n0, n0, n0, |i, j| p0.apply(&self.ee(&c0[i], &c0[j])));
        let m01 = Tensor3::from_fn(n0, n1, n1, |i, j| p1.apply(&self.eo(&c0[i], &c1[j])));
        let brk = Tensor3::from_fn(n1, n1, n0, |i, j| p0.apply(&self.br(&c1[i], &c1[j])));
        Hla::from_parts(
            &self.name,
            &(p0 * &self.alpha) * &i0,
            &(p1 * &self.beta) * &i1,
            m00,
            m01,
            brk,
        )
    }

    /// The sub-structure on the independent columns of `b0`, `b1`, in their coordinates.
    pub fn restrict(&self, b0: &Mat, b1: &Mat) -> Result<Hla> {
        check_span_shape(self, b0, b1)?;
        let (k0, k1) = (b0.cols(), b1.cols());
        if b0.rank() != k0 || b1.rank() != k1 {
            return Err(Error::Structural("restriction basis is dependent".into()));
        }
        let (c0, c1) = (b0.columns(), b1.columns());
        let co = |b: &Mat, v: Vector| coords_in(b, &v).ok_or(Error::NotSubalgebra);
        let mut m00 = Tensor3::zeros(k0, k0, k0);
        for i in 0..k0 {
            for j in 0..k0 {
                for (k, x) in co(b0, self.ee(&c0[i], &c0[j]))?.into_iter().enumerate() {
                    m00.set(i, j, k, x);
                }
            }
        }
        let mut m01 = Tensor3::zeros(k0, k1, k1);
        for i in 0..k0 {
            for j in 0..k1 {
                for (k, x) in co(b1, self.eo(&c0[i], &c1[j]))?.into_iter().enumerate() {
                    m01.set(i, j, k, x);
                }
            }
        }
        let mut brk = Tensor3::zeros(k1, k1, k0);
        for i in 0..k1 {
            for j in 0..k1 {
                for (k, x) in co(b0, self.br(&c1[i], &c1[j]))?.into_iter().enumerate() {
                    brk.set(i, j, k, x);
                }
            }
        }
        let alpha = Mat::from_cols(
            k0,
            &c0.iter()
                .map(|c| co(b0, self.tw0(c)))
                .collect::<Result<Vec<_>>>()?,
        );
        let beta = Mat::from_cols(
            k1,
            &c1.iter()
                .map(|c| co(b1, self.tw1(c)))
                .collect::<Result<Vec<_>>>()?,
        );
        Hla::from_parts(&self.name, alpha, beta, m00, m01, brk)
    }
}

fn check_span_shape(a: &Hla, b0: &Mat, b1: &Mat) -> Result<()> {
    if b0.rows() != a.dim_even {
        return Err(Error::Dimension(format!(
            "even span has {} rows, algebra has {} even dimensions",
            b0.rows(),
            a.dim_even
        )));
    }
    if b1.rows() != a.dim_odd {
        return Err(Error::Dimension(format!(
            "odd span has {} rows, algebra has {} odd dimensions",
            b1.rows(),
            a.dim_odd
        )));
    }
    Ok(())
}

/// Evaluate all seven identity families on basis tuples. Empty iff valid.
pub fn validate_hla(a: &Hla) -> Result<Vec<IdentityReport>> {
    use names::*;
    a.check_dims()?;
    let (n0, n1) = (a.dim_even, a.dim_odd);
    let ev: Vec<Vector> = (0..n0).map(|i| a.e(i)).collect();
    let od: Vec<Vector> = (0..n1).map(|i| a.o(i)).collect();
    let aev: Vec<Vector> = ev.iter().map(|x| a.tw0(x)).collect();
    let bod: Vec<Vector> = od.iter().map(|y| a.tw1(y)).collect();
    let half = Scalar::half();
    let mut c = Collector::default();

    for i in 0..n0 {
        for j in 0..n0 {
            let xij = a.ee(&ev[i], &ev[j]);
            for k in 0..n0 {
                let lhs = a.ee(&aev[i], &a.ee(&ev[j], &ev[k]));
                let rhs = a.ee(&xij, &aev[k]);
                c.check(EVEN_ASSOC, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n0 {
            let xij = a.ee(&ev[i], &ev[j]);
            for k in 0..n1 {
                let lhs = a.eo(&aev[i], &a.eo(&ev[j], &od[k]));
                let rhs = vscale(&half, &a.eo(&xij, &bod[k]));
                c.check(EVEN_ODD_HALF, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n1 {
            let xy1 = a.eo(&ev[i], &od[j]);
            for k in 0..n1 {
                let lhs = a.ee(&aev[i], &a.br(&od[j], &od[k]));
                let xy2 = a.eo(&ev[i], &od[k]);
                let rhs = crate::exactq::vadd(&a.br(&xy1, &bod[k]), &a.br(&bod[j], &xy2));
                c.check(BRACKET_DERIVATION, &[i, j, k], lhs, rhs);
            }
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            for k in 0..n1 {
                let t1 = a.eo(&a.br(&od[j], &od[k]), &bod[i]);
                let t2 = a.eo(&a.br(&od[k], &od[i]), &bod[j]);
                let t3 = a.eo(&a.br(&od[i], &od[j]), &bod[k]);
                let lhs = crate::exactq::vadd(&crate::exactq::vadd(&t1, &t2), &t3);
                c.check(ODD_CYCLIC, &[i, j, k], lhs, vec![Scalar::zero(); n1]);
            }
        }
    }
    for i in 0..n0 {
        for j in 0..n0 {
            let lhs = a.tw0(&a.ee(&ev[i], &ev[j]));
            let rhs = a.ee(&aev[i], &aev[j]);
            c.check(TWIST_MULT_EVEN, &[i, j], lhs, rhs);
        }
    }
    for i in 0..n0 {
        for j in 0..n1 {
            let lhs = a.tw1(&a.eo(&ev[i], &od[j]));
            let rhs = a.eo(&aev[i], &bod[j]);
            c.check(TWIST_MULT_MIXED, &[i, j], lhs, rhs);
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            let lhs = a.tw0(&a.br(&od[i], &od[j]));
            let rhs = a.br(&bod[i], &bod[j]);
            c.check(TWIST_MULT_BRACKET, &[i, j], lhs, rhs);
        }
    }
    Ok(c.finish())
}

/// Pair of graded linear maps between two algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlaMorphism {
    pub source: Hla,
    pub target: Hla,
    pub phi0: Mat,
    pub phi1: Mat,
}

impl HlaMorphism {
    pub fn identity(a: &Hla) -> Self {
        HlaMorphism {
            source: a.clone(),
            target: a.clone(),
            phi0: Mat::identity(a.dim_even),
            phi1: Mat::identity(a.dim_odd),
        }
    }

    pub fn check(&self) -> Result<Vec<IdentityReport>> {
        check_morphism(&self.source, &self.target, &self.phi0, &self.phi1)
    }
}

pub fn check_map_shape(src: &Hla, tgt: &Hla, phi0: &Mat, phi1: &Mat) -> Result<()> {
    if phi0.shape() != (tgt.dim_even, src.dim_even) {
        return Err(Error::Dimension(format!(
            "even map is {:?}, expected {}x{}",
            phi0.shape(),
            tgt.dim_even,
            src.dim_even
        )));
    }
    if phi1.shape() != (tgt.dim_odd, src.dim_odd) {
        return Err(Error::Dimension(format!(
            "odd map is {:?}, expected {}x{}",
            phi1.shape(),
            tgt.dim_odd,
            src.dim_odd
        )));
    }
    Ok(())
}

/// Twist intertwining and the three product conditions on basis pairs.
pub fn check_morphism(src: &Hla, tgt: &Hla, phi0: &Mat, phi1: &Mat) -> Result<Vec<IdentityReport>> {
    src.check_dims()?;
    tgt.check_dims()?;
    check_map_shape(src, tgt, phi0, phi1)?;
    let (n0, n1) = (src.dim_even, src.dim_odd);
    let ev: Vec<Vector> = (0..n0).map(|i| src.e(i)).collect();
    let od: Vec<Vector> = (0..n1).map(|i| src.o(i)).collect();
    let pev: Vec<Vector> = ev.iter().map(|x| phi0.apply(x)).collect();
    let pod: Vec<Vector> = od.iter().map(|y| phi1.apply(y)).collect();
    let mut c = Collector::default();
    for i in 0..n0 {
        c.check(
            "twist-even",
            &[i],
            phi0.apply(&src.tw0(&ev[i])),
            tgt.tw0(&pev[i]),
        );
    }
    for i in 0..n1 {
        c.check(
            "twist-odd",
            &[i],
            phi1.apply(&src.tw1(&od[i])),
            tgt.tw1(&pod[i]),
        );
    }
    for i in 0..n0 {
        for j in 0..n0 {
            c.check(
                "product-even",
                &[i, j],
                phi0.apply(&src.ee(&ev[i], &ev[j])),
                tgt.ee(&pev[i], &pev[j]),
            );
        }
    }
    for i in 0..n0 {
        for j in 0..n1 {
            c.check(
                "product-mixed",
                &[i, j],
                phi1.apply(&src.eo(&ev[i], &od[j])),
                tgt.eo(&pev[i], &pod[j]),
            );
        }
    }
    for i in 0..n1 {
        for j in 0..n1 {
            c.check(
                "product-bracket",
                &[i, j],
                phi0.apply(&src.br(&od[i], &od[j])),
                tgt.br(&pod[i], &pod[j]),
            );
        }
    }
    Ok(c.finish())
}

#[derive(Clone, Debug)]
pub struct SubalgebraCheck {
    pub subalgebra: bool,
    pub ideal: bool,
    pub reports: Vec<IdentityReport>,
}

/// Membership test used by the closure checks: reports the component of `v`
/// outside `span` (zero iff `v ∈ span`).
struct SpanTest {
    comp: Mat,
    proj: Mat,
}

impl SpanTest {
    fn new(span: &Mat) -> Self {
        let (comp, proj) = cokernel_complement(span);
        SpanTest { comp, proj }
    }

    fn check(&self, c: &mut Collector, name: &str, w: &[usize], v: Vector) {
        let outside = self.comp.apply(&self.proj.apply(&v));
        if !is_zero_vec(&outside) {
            let inside = vsub(&v, &outside);
            c.check(name, w, v, inside);
        }
    }
}

/// Closure under products and twists, and the ideal conditions.
pub fn check_subalgebra(a: &Hla, span_even: &Mat, span_odd: &Mat) -> Result<SubalgebraCheck> {
    a.check_dims()?;
    check_span_shape(a, span_even, span_odd)?;
    let (t0, t1) = (SpanTest::new(span_even), SpanTest::new(span_odd));
    let (b0, b1) = (span_even.columns(), span_odd.columns());
    let mut sub = Collector::default();
    for (i, x1) in b0.iter().enumerate() {
        for (j, x2) in b0.iter().enumerate() {
            t0.check(&mut sub, "closed-even-even", &[i, j], a.ee(x1, x2));
        }
    }
    for (i, x) in b0.iter().enumerate() {
        for (j, y) in b1.iter().enumerate() {
            t1.check(&mut sub, "closed-even-odd", &[i, j], a.eo(x, y));
        }
    }
    for (i, y1) in b1.iter().enumerate() {
        for (j, y2) in b1.iter().enumerate() {
            t0.check(&mut sub, "closed-bracket", &[i, j], a.br(y1, y2));
        }
    }
    for (i, x) in b0.iter().enumerate() {
        t0.check(&mut sub, "twist-invariant-even", &[i], a.tw0(x));
    }
    for (i, y) in b1.iter().enumerate() {
        t1.check(&mut sub, "twist-invariant-odd", &[i], a.tw1(y));
    }
    let subalgebra = sub.reports.is_empty();

    let mut ide = Collector::default();
    for (i, x) in b0.iter().enumerate() {
        for j in 0..a.dim_even {
            t0.check(&mut ide, "ideal-even-even", &[i, j], a.ee(x, &a.e(j)));
        }
        for j in 0..a.dim_odd {
            t1.check(&mut ide, "ideal-even-odd", &[i, j], a.eo(x, &a.o(j)));
        }
    }
    for (i, y) in b1.iter().enumerate() {
        for j in 0..a.dim_even {
            t1.check(&mut ide, "ideal-odd-even", &[i, j], a.eo(&a.e(j), y));
        }
        for j in 0..a.dim_odd {
            t0.check(&mut ide, "ideal-bracket", &[i, j], a.br(y, &a.o(j)));
        }
    }
    let ideal = subalgebra && ide.reports.is_empty();
    let mut reports = sub.finish();
    reports.extend(ide.finish());
    Ok(SubalgebraCheck {
        subalgebra,
        ideal,
        reports,
    })
}

/// Quotient algebra on the canonical complement basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Hla,
    /// Projections onto complement coordinates.
    pub pi0: Mat,
    pub pi1: Mat,
    /// Complement bases (a linear lift of the quotient).
    pub lift0: Mat,
    pub lift1: Mat,
}

pub fn quotient_hla(a: &Hla, span_even: &Mat, span_odd: &Mat) -> Result<Quotient> {
    let chk = check_subalgebra(a, span_even, span_odd)?;
    if !chk.ideal {
        let twist_only = chk
            .reports
            .iter()
            .all(|r| r.identity.starts_with("twist-invariant"));
        return Err(if twist_only {
            Error::TwistDoesNotDescend
        } else {
            Error::NotIdeal
        });
    }
    let (lift0, pi0) = cokernel_complement(span_even);
    let (lift1, pi1) = cokernel_complement(span_odd);
    let (q0, q1) = (lift0.cols(), lift1.cols());
    let (l0, l1) = (lift0.columns(), lift1.columns());
    let m00 = Tensor3::from_fn(q0, q0, q0, |i, j| pi0.apply(&a.ee(&l0[i], &l0[j])));
    let m01 = Tensor3::from_fn(q0, q1, q1, |i, j| pi1.apply(&a.eo(&l0[i], &l1[j])));
    let brk = Tensor3::from_fn(q1, q1, q0, |i, j| pi0.apply(&a.br(&l1[i], &l1[j])));
    let alpha = &(&pi0 * &a.alpha) * &lift0;
    let beta = &(&pi1 * &a.beta) * &lift1;
    let algebra = Hla::from_parts(&format!("{}/ideal", a.name), alpha, beta, m00, m01, brk)?;
    Ok(Quotient {
        algebra,
        pi0,
        pi1,
        lift0,
        lift1,
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

    #[test]
    fn k3_at_two_is_valid() {
        assert!(validate_hla(&k3(&q("2")).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn zero_products_identity_twists_valid() {
        for (n0, n1) in [(0, 0), (2, 3), (3, 1)] {
            assert!(validate_hla(&Hla::new("z", n0, n1)).unwrap().is_empty());
        }
    }

    #[test]
    fn rescaled_bracket_stays_valid() {
        // Every identity is linear in the bracket, so [a,b] = ε is again valid:
        // at (ε,a,b) both sides of the derivation identity equal ε.
        let mut a = k3(&q("2")).unwrap();
        a.set_bracket(0, 1, 0, q("1")).unwrap();
        assert!(validate_hla(&a).unwrap().is_empty());
        let lhs = a.ee(&a.tw0(&a.e(0)), &a.br(&a.o(0), &a.o(1)));
        let rhs = crate::exactq::vadd(
            &a.br(&a.eo(&a.e(0), &a.o(0)), &a.tw1(&a.o(1))),
            &a.br(&a.tw1(&a.o(0)), &a.eo(&a.e(0), &a.o(1))),
        );
        assert_eq!(lhs, vec![q("1")]);
        assert_eq!(rhs, vec![q("1")]);
    }

    #[test]
    fn mixed_product_mutation_is_reported() {
        let mut a = k3(&q("2")).unwrap();
        a.set_even_odd(0, 0, 0, q("2"));
        let r = validate_hla(&a).unwrap();
        let f = families(&r);
        assert!(f.contains(names::EVEN_ODD_HALF));
        assert!(f.contains(names::BRACKET_DERIVATION));
    }

    #[test]
    fn dimension_errors() {
        let mut a = k3(&q("2")).unwrap();
        a.alpha = Mat::identity(2);
        assert!(matches!(validate_hla(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn morphism_examples() {
        let a = k3(&q("2")).unwrap();
        assert!(HlaMorphism::identity(&a).check().unwrap().is_empty());
        let zero = check_morphism(&a, &a, &Mat::zeros(1, 1), &Mat::zeros(2, 2)).unwrap();
        assert!(zero.is_empty());
        let r = check_morphism(&a, &a, &Mat::identity(1), &Mat::scalar(2, &q("2"))).unwrap();
        let b = r
            .iter()
            .find(|r| r.identity == "product-bracket" && r.witness == vec![0, 1])
            .unwrap();
        assert_eq!(b.lhs, vec![q("1/2")]);
        assert_eq!(b.rhs, vec![q("2")]);
    }

    #[test]
    fn subalgebra_examples() {
        let a = k3(&q("2")).unwrap();
        let full = check_subalgebra(&a, &Mat::identity(1), &Mat::identity(2)).unwrap();
        assert!(full.subalgebra && full.ideal);
        let span_a = Mat::from_ints(&[&[1], &[0]]);
        let chk = check_subalgebra(&a, &Mat::zeros(1, 0), &span_a).unwrap();
        assert!(!(chk.subalgebra && chk.ideal));
        let w = chk
            .reports
            .iter()
            .find(|r| r.identity == "ideal-bracket")
            .unwrap();
        assert_eq!(w.lhs, vec![q("1/2")]);

        let m = m4(&q("2")).unwrap();
        let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
        let chk = check_subalgebra(&m, &Mat::zeros(1, 0), &a3).unwrap();
        assert!(chk.subalgebra && chk.ideal);
    }

    #[test]
    fn quotient_examples() {
        let m = m4(&q("2")).unwrap();
        let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
        let qt = quotient_hla(&m, &Mat::zeros(1, 0), &a3).unwrap();
        let n = &qt.algebra;
        assert_eq!((n.dim_even, n.dim_odd), (1, 2));
        assert_eq!(n.br(&n.o(0), &n.o(1)), vec![q("1")]);
        assert!(is_zero_vec(&n.eo(&n.e(0), &n.o(0))));
        assert!(validate_hla(n).unwrap().is_empty());
        let proj = check_morphism(&m, n, &qt.pi0, &qt.pi1).unwrap();
        assert!(proj.is_empty());

        let z = quotient_hla(&m, &Mat::zeros(1, 0), &Mat::zeros(3, 0)).unwrap();
        assert_eq!(z.algebra.m00(), m.m00());
        assert!(z.pi0.is_identity() && z.pi1.is_identity());

        let all = quotient_hla(&m, &Mat::identity(1), &Mat::identity(3)).unwrap();
        assert_eq!((all.algebra.dim_even, all.algebra.dim_odd), (0, 0));

        let k = k3(&q("2")).unwrap();
        let span_a = Mat::from_ints(&[&[1], &[0]]);
        assert!(matches!(
            quotient_hla(&k, &Mat::zeros(1, 0), &span_a),
            Err(Error::NotIdeal)
        ));
    }
}
