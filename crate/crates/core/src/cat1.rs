//! Cat¹ structures, their morphisms and the two constructions relating them
//! to crossed modules, with explicit round-trip isomorphisms.

use crate::action::{semidirect, Action};
use crate::error::{Error, Result};
use crate::exactq::{coords_in, kernel_basis, zero_vec, Mat, Tensor3, Vector};
use crate::hla::{check_morphism, check_subalgebra, validate_hla, Hla};
use crate::report::{prefixed, Collector, IdentityReport};
use crate::representation::HomModule;
use crate::xmod::{validate_xmod, CrossedModule, XModMorphism};

/// `big` with a subalgebra spanned by the columns of `sub_even`, `sub_odd`
/// and two retractions `s`, `t` onto it, written in sub-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cat1 {
    pub big: Hla,
    pub sub_even: Mat,
    pub sub_odd: Mat,
    pub s0: Mat,
    pub s1: Mat,
    pub t0: Mat,
    pub t1: Mat,
}

impl Cat1 {
    /// `(𝔞, 𝔞, id, id)`.
    pub fn identity(a: &Hla) -> Self {
        let (i0, i1) = (Mat::identity(a.dim_even), Mat::identity(a.dim_odd));
        Cat1 {
            big: a.clone(),
            sub_even: i0.clone(),
            sub_odd: i1.clone(),
            s0: i0.clone(),
            s1: i1.clone(),
            t0: i0,
            t1: i1,
        }
    }

    pub fn check_shape(&self) -> Result<()> {
        self.big.check_dims()?;
        let (n0, n1) = (self.big.dim_even, self.big.dim_odd);
        let (k0, k1) = (self.sub_even.cols(), self.sub_odd.cols());
        if self.sub_even.rows() != n0 || self.sub_odd.rows() != n1 {
            return Err(Error::Dimension(
                "sub span rows differ from algebra dims".into(),
            ));
        }
        if self.sub_even.rank() != k0 || self.sub_odd.rank() != k1 {
            return Err(Error::Dimension("sub span columns are dependent".into()));
        }
        for (name, m, want) in [
            ("s0", &self.s0, (k0, n0)),
            ("t0", &self.t0, (k0, n0)),
            ("s1", &self.s1, (k1, n1)),
            ("t1", &self.t1, (k1, n1)),
        ] {
            if m.shape() != want {
                return Err(Error::Dimension(format!(
                    "{name} is {:?}, expected {}x{}",
                    m.shape(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(())
    }

    /// The subalgebra in its own coordinates.
    pub fn sub_algebra(&self) -> Result<Hla> {
        Ok(self
            .big
            .restrict(&self.sub_even, &self.sub_odd)?
            .with_name(&format!("sub({})", self.big.name)))
    }
}

fn kernel_products(c: &mut Collector, big: &Hla, ks: [&Mat; 4]) {
    let [ks0, ks1, kt0, kt1] = ks.map(|m| m.columns());
    for (i, p) in ks0.iter().enumerate() {
        for (j, q) in kt0.iter().enumerate() {
            let z = zero_vec(big.dim_even);
            c.check("ker-s0-ker-t0", &[i, j], big.ee(p, q), z);
        }
        for (j, q) in kt1.iter().enumerate() {
            let z = zero_vec(big.dim_odd);
            c.check("ker-s0-ker-t1", &[i, j], big.eo(p, q), z);
        }
    }
    for (i, p) in kt0.iter().enumerate() {
        for (j, q) in ks1.iter().enumerate() {
            let z = zero_vec(big.dim_odd);
            c.check("ker-t0-ker-s1", &[i, j], big.eo(p, q), z);
        }
    }
    for (i, p) in ks1.iter().enumerate() {
        for (j, q) in kt1.iter().enumerate() {
            let z = zero_vec(big.dim_even);
            c.check("ker-s1-ker-t1", &[i, j], big.br(p, q), z);
        }
    }
}

/// Validity of `big` (prefix `algebra:`), `s`, `t` as morphisms (prefixes
/// `s:`, `t:`), the retraction conditions and the four kernel products.
pub fn validate_cat1(c: &Cat1) -> Result<Vec<IdentityReport>> {
    c.check_shape()?;
    let mut out = prefixed("algebra:", validate_hla(&c.big)?);
    if !check_subalgebra(&c.big, &c.sub_even, &c.sub_odd)?.subalgebra {
        return Err(Error::NotSubalgebra);
    }
    let n = c.sub_algebra()?;
    out.extend(prefixed("s:", check_morphism(&c.big, &n, &c.s0, &c.s1)?));
    out.extend(prefixed("t:", check_morphism(&c.big, &n, &c.t0, &c.t1)?));
    let mut col = Collector::default();
    for (name, m, sub) in [
        ("retract-s0", &c.s0, &c.sub_even),
        ("retract-s1", &c.s1, &c.sub_odd),
        ("retract-t0", &c.t0, &c.sub_even),
        ("retract-t1", &c.t1, &c.sub_odd),
    ] {
        for i in 0..sub.cols() {
            let unit = crate::exactq::unit_vec(sub.cols(), i);
            col.check(name, &[i], m.apply(&sub.col(i)), unit);
        }
    }
    let ks = [
        kernel_basis(&c.s0),
        kernel_basis(&c.s1),
        kernel_basis(&c.t0),
        kernel_basis(&c.t1),
    ];
    kernel_products(&mut col, &c.big, [&ks[0], &ks[1], &ks[2], &ks[3]]);
    out.extend(col.finish());
    Ok(out)
}

/// `(𝔞 ⋉ V, 𝔞, s, t)` with `s(x,v) = x` and `t(x,v) = x + ∂v`.
pub fn xmod_to_cat1(x: &CrossedModule) -> Result<Cat1> {
    let reports = validate_xmod(x)?;
    if !reports.is_empty() {
        return Err(Error::InvalidXmod(reports));
    }
    let sd = semidirect(&x.act)?;
    let (n0, n1) = (x.base().dim_even, x.base().dim_odd);
    let (m0, m1) = (x.top().dim_even, x.top().dim_odd);
    let c = Cat1 {
        big: sd.algebra,
        sub_even: sd.incl_acting.0,
        sub_odd: sd.incl_acting.1,
        s0: Mat::identity(n0).hcat(&Mat::zeros(n0, m0)),
        s1: Mat::identity(n1).hcat(&Mat::zeros(n1, m1)),
        t0: Mat::identity(n0).hcat(&x.d0),
        t1: Mat::identity(n1).hcat(&x.d1),
    };
    let post = validate_cat1(&c)?;
    if !post.is_empty() {
        return Err(Error::Postcondition {
            what: "constructed Cat1 structure is valid".into(),
            reports: post,
        });
    }
    Ok(c)
}

/// `(Ker s, N, t|Ker s)` with the action given by multiplication in `big`.
/// V is written in the RREF kernel basis of `s`, 𝔞 in the sub basis.
pub fn cat1_to_xmod(c: &Cat1) -> Result<CrossedModule> {
    let reports = validate_cat1(c)?;
    if !reports.is_empty() {
        return Err(Error::InvalidCat1(reports));
    }
    let big = &c.big;
    let (k0, k1) = (kernel_basis(&c.s0), kernel_basis(&c.s1));
    if c.sub_even.hcat(&k0).rank() != big.dim_even || c.sub_odd.hcat(&k1).rank() != big.dim_odd {
        return Err(Error::Structural("big is not N ⊕ Ker s".into()));
    }
    let n = c.sub_algebra()?;
    let v = big
        .restrict(&k0, &k1)?
        .with_name(&format!("ker({})", big.name));
    let (nb0, nb1) = (c.sub_even.columns(), c.sub_odd.columns());
    let (kb0, kb1) = (k0.columns(), k1.columns());
    let co = |b: &Mat, z: Vector| -> Vector { coords_in(b, &z).expect("Ker s is an ideal") };
    let (m0, m1) = (v.dim_even, v.dim_odd);
    let rep = HomModule {
        dim_even: m0,
        dim_odd: m1,
        alpha_v: v.alpha.clone(),
        beta_v: v.beta.clone(),
        rho0_even: Tensor3::from_fn(n.dim_even, m0, m0, |i, j| co(&k0, big.ee(&nb0[i], &kb0[j]))),
        rho0_odd: Tensor3::from_fn(n.dim_even, m1, m1, |i, j| co(&k1, big.eo(&nb0[i], &kb1[j]))),
        rho1_on_even: Tensor3::from_fn(n.dim_odd, m0, m1, |i, j| co(&k1, big.eo(&kb0[j], &nb1[i]))),
        rho1_on_odd: Tensor3::from_fn(n.dim_odd, m1, m0, |i, j| co(&k0, big.br(&nb1[i], &kb1[j]))),
    };
    let x = CrossedModule {
        d0: &c.t0 * &k0,
        d1: &c.t1 * &k1,
        act: Action::new(n, v, rep)?,
    };
    let post = validate_xmod(&x)?;
    if !post.is_empty() {
        return Err(Error::Postcondition {
            what: "constructed crossed module is valid".into(),
            reports: post,
        });
    }
    Ok(x)
}

/// An algebra map `f: source.big → target.big` checked against both Cat¹
/// structures.
#[derive(Clone, Debug)]
pub struct Cat1Morphism {
    pub source: Cat1,
    pub target: Cat1,
    pub f0: Mat,
    pub f1: Mat,
}

impl Cat1Morphism {
    pub fn identity(c: &Cat1) -> Self {
        Cat1Morphism {
            source: c.clone(),
            target: c.clone(),
            f0: Mat::identity(c.big.dim_even),
            f1: Mat::identity(c.big.dim_odd),
        }
    }

    pub fn check(&self) -> Result<Vec<IdentityReport>> {
        check_cat1_morphism(&self.source, &self.target, &self.f0, &self.f1)
    }

    pub fn is_invertible(&self) -> bool {
        [&self.f0, &self.f1]
            .iter()
            .all(|m| m.rows() == m.cols() && m.inverse().is_some())
    }
}

/// `f` is an algebra map (prefix `hom:`), sends N into Ñ, and intertwines
/// both retractions: `s̃f = f|N s`, `t̃f = f|N t` in each parity.
pub fn check_cat1_morphism(
    src: &Cat1,
    tgt: &Cat1,
    f0: &Mat,
    f1: &Mat,
) -> Result<Vec<IdentityReport>> {
    src.check_shape()?;
    tgt.check_shape()?;
    let mut out = prefixed("hom:", check_morphism(&src.big, &tgt.big, f0, f1)?);
    let mut c = Collector::default();
    let restrict = |c: &mut Collector, name: &str, f: &Mat, sub: &Mat, tsub: &Mat| {
        let mut cols = Vec::new();
        for (i, z) in sub.columns().iter().enumerate() {
            let fz = f.apply(z);
            match coords_in(tsub, &fz) {
                Some(x) => cols.push(x),
                None => {
                    let (comp, proj) = crate::exactq::cokernel_complement(tsub);
                    let outside = comp.apply(&proj.apply(&fz));
                    let inside = crate::exactq::vsub(&fz, &outside);
                    c.check(name, &[i], fz, inside);
                }
            }
        }
        (cols.len() == sub.cols()).then(|| Mat::from_cols(tsub.cols(), &cols))
    };
    let fn0 = restrict(&mut c, "maps-sub-even", f0, &src.sub_even, &tgt.sub_even);
    let fn1 = restrict(&mut c, "maps-sub-odd", f1, &src.sub_odd, &tgt.sub_odd);
    if let Some(fn0) = &fn0 {
        for i in 0..src.big.dim_even {
            let z = src.big.e(i);
            let fz = f0.apply(&z);
            c.check(
                "s-even",
                &[i],
                tgt.s0.apply(&fz),
                fn0.apply(&src.s0.apply(&z)),
            );
            c.check(
                "t-even",
                &[i],
                tgt.t0.apply(&fz),
                fn0.apply(&src.t0.apply(&z)),
            );
        }
    }
    if let Some(fn1) = &fn1 {
        for i in 0..src.big.dim_odd {
            let z = src.big.o(i);
            let fz = f1.apply(&z);
            c.check(
                "s-odd",
                &[i],
                tgt.s1.apply(&fz),
                fn1.apply(&src.s1.apply(&z)),
            );
            c.check(
                "t-odd",
                &[i],
                tgt.t1.apply(&fz),
                fn1.apply(&src.t1.apply(&z)),
            );
        }
    }
    out.extend(c.finish());
    Ok(out)
}

/// The canonical isomorphism from `x` to `cat1_to_xmod(xmod_to_cat1(x))`:
/// `v ↦ (0, v)` in kernel coordinates and the identity on 𝔞.
pub fn xmod_round_trip(x: &CrossedModule) -> Result<XModMorphism> {
    let c = xmod_to_cat1(x)?;
    let y = cat1_to_xmod(&c)?;
    let (k0, k1) = (kernel_basis(&c.s0), kernel_basis(&c.s1));
    let (n0, n1) = (x.base().dim_even, x.base().dim_odd);
    let (m0, m1) = (x.top().dim_even, x.top().dim_odd);
    let embed = |k: &Mat, n: usize, m: usize| -> Mat {
        let cols: Vec<Vector> = (0..m)
            .map(|i| {
                let mut z = zero_vec(n + m);
                z[n + i] = crate::exactq::Scalar::one();
                coords_in(k, &z).expect("(0, v) lies in Ker s")
            })
            .collect();
        Mat::from_cols(k.cols(), &cols)
    };
    let psi0 = coords_mat(&c.sub_even, &Mat::identity(n0).vcat(&Mat::zeros(m0, n0)));
    let psi1 = coords_mat(&c.sub_odd, &Mat::identity(n1).vcat(&Mat::zeros(m1, n1)));
    Ok(XModMorphism {
        source: x.clone(),
        target: y,
        phi: (embed(&k0, n0, m0), embed(&k1, n1, m1)),
        psi: (psi0, psi1),
    })
}

fn coords_mat(basis: &Mat, m: &Mat) -> Mat {
    let cols: Vec<Vector> = m
        .columns()
        .iter()
        .map(|z| coords_in(basis, z).expect("column in span"))
        .collect();
    Mat::from_cols(basis.cols(), &cols)
}

/// The canonical isomorphism from `xmod_to_cat1(cat1_to_xmod(c))` to `c`:
/// `(n, p) ↦ n + p` for `n ∈ N` and `p ∈ Ker s`.
pub fn cat1_round_trip(c: &Cat1) -> Result<Cat1Morphism> {
    let x = cat1_to_xmod(c)?;
    let d = xmod_to_cat1(&x)?;
    let (k0, k1) = (kernel_basis(&c.s0), kernel_basis(&c.s1));
    Ok(Cat1Morphism {
        source: d,
        target: c.clone(),
        f0: c.sub_even.hcat(&k0),
        f1: c.sub_odd.hcat(&k1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{k3, m4, m4_bundle};
    use crate::exactq::Scalar;
    use crate::report::families;
    use crate::xmod::{ideal_inclusion, identity_xmod, zero_xmod};

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn identity_and_example_cat1_are_valid() {
        let k = k3(&q("2")).unwrap();
        assert!(validate_cat1(&Cat1::identity(&k)).unwrap().is_empty());
        let b = m4_bundle(&q("2")).unwrap();
        assert!(validate_cat1(&b.cat1).unwrap().is_empty());
        assert_eq!((b.cat1.big.dim_even, b.cat1.big.dim_odd), (2, 5));
    }

    #[test]
    fn example_kernels() {
        let b = m4_bundle(&q("2")).unwrap();
        let c = &b.cat1;
        assert_eq!(kernel_basis(&c.s0), Mat::from_ints(&[&[0], &[1]]));
        assert_eq!(kernel_basis(&c.t0), Mat::from_ints(&[&[-1], &[1]]));
    }

    #[test]
    fn both_projections_with_an_even_idempotent_fail() {
        let b = m4_bundle(&q("2")).unwrap();
        let mut c = b.cat1.clone();
        c.t0 = c.s0.clone();
        c.t1 = c.s1.clone();
        c.big.set_even_even(1, 1, 1, Scalar::one());
        let r = validate_cat1(&c).unwrap();
        let w = r.iter().find(|r| r.identity == "ker-s0-ker-t0").unwrap();
        assert_eq!(w.lhs, vec![q("0"), q("1")]);
    }

    #[test]
    fn constructions_on_small_examples() {
        let k = k3(&q("2")).unwrap();
        let c = xmod_to_cat1(&zero_xmod(&k)).unwrap();
        assert!(c.s0.is_identity() && c.t0.is_identity() && c.s1.is_identity());

        let m = m4(&q("2")).unwrap();
        let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
        let c = xmod_to_cat1(&ideal_inclusion(&m, &Mat::zeros(1, 0), &a3).unwrap()).unwrap();
        assert_eq!((c.big.dim_even, c.big.dim_odd), (1, 4));

        let c = xmod_to_cat1(&identity_xmod(&k)).unwrap();
        assert_eq!(kernel_basis(&c.s0).cols() + kernel_basis(&c.s1).cols(), 3);
        assert_eq!(kernel_basis(&c.t0).cols() + kernel_basis(&c.t1).cols(), 3);

        let x = cat1_to_xmod(&Cat1::identity(&k)).unwrap();
        assert_eq!((x.top().dim_even, x.top().dim_odd), (0, 0));
    }

    #[test]
    fn example_cat1_recovers_projection_boundary() {
        let b = m4_bundle(&q("2")).unwrap();
        let x = cat1_to_xmod(&b.cat1).unwrap();
        assert_eq!(x.d0, b.xmod.d0);
        assert_eq!(x.d1, b.xmod.d1);
    }

    #[test]
    fn round_trips_are_isomorphisms() {
        let k = k3(&q("2")).unwrap();
        for x in [
            identity_xmod(&k),
            zero_xmod(&k),
            m4_bundle(&q("2")).unwrap().xmod,
        ] {
            let iso = xmod_round_trip(&x).unwrap();
            assert!(iso.check().unwrap().is_empty());
            assert!(iso.is_invertible());
            let iso = cat1_round_trip(&xmod_to_cat1(&x).unwrap()).unwrap();
            assert!(iso.check().unwrap().is_empty());
            assert!(iso.is_invertible());
        }
    }

    #[test]
    fn morphism_examples() {
        let b = m4_bundle(&q("2")).unwrap();
        let c = &b.cat1;
        assert!(Cat1Morphism::identity(c).check().unwrap().is_empty());

        // The projection onto (N, N, id, id) via s does not intertwine t.
        let n = c.sub_algebra().unwrap();
        let r = check_cat1_morphism(c, &Cat1::identity(&n), &c.s0, &c.s1).unwrap();
        assert!(families(&r).contains("t-even"));

        // Swapping two odd kernel directions breaks the β-intertwining.
        let mut f1 = Mat::identity(5);
        let ks1 = kernel_basis(&c.s1).columns();
        let (p, q_) = (
            ks1[0].iter().position(|x| !x.is_zero()).unwrap(),
            ks1[1].iter().position(|x| !x.is_zero()).unwrap(),
        );
        f1.set(p, p, Scalar::zero());
        f1.set(q_, q_, Scalar::zero());
        f1.set(p, q_, Scalar::one());
        f1.set(q_, p, Scalar::one());
        let r = check_cat1_morphism(c, c, &Mat::identity(2), &f1).unwrap();
        assert!(families(&r).contains("hom:twist-odd"));
    }
}
