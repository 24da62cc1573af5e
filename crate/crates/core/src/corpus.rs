//! Built-in example algebras and the structures derived from them.

use crate::action::{semidirect, Action};
use crate::cat1::{xmod_to_cat1, Cat1};
use crate::error::{Error, Result};
use crate::exactq::{
    cokernel_complement, image_basis, kernel_basis, unit_vec, unvec, vec_of, Mat, Scalar,
};
use crate::hla::{names as hla_names, quotient_hla, Hla};
use crate::report::{Collector, IdentityReport};
use crate::representation::HomModule;
use crate::xmod::{from_nested_ideals, transport_xmod, zero_xmod, CrossedModule, XModMorphism};

fn nonzero(name: &str, mu: &Scalar) -> Result<Scalar> {
    mu.recip()
        .ok_or_else(|| Error::Parameter(format!("{name} must be nonzero")))
}

/// Three-dimensional algebra: even `ε`, odd `a`, `b`, with `ε·ε = ε`,
/// `ε·a = ½μa`, `ε·b = ½μ⁻¹b`, `[a,b] = ½ε`, `α = 1`, `β = diag(μ, μ⁻¹)`.
pub fn k3(mu: &Scalar) -> Result<Hla> {
    let inv = nonzero("mu", mu)?;
    let h = Scalar::half();
    let mut a = Hla::new("K3", 1, 2);
    a.set_even_even(0, 0, 0, Scalar::one());
    a.set_even_odd(0, 0, 0, &h * mu);
    a.set_even_odd(0, 1, 1, &h * &inv);
    a.set_bracket(0, 1, 0, h)?;
    a.beta = Mat::diag(&[mu.clone(), inv]);
    Ok(a)
}

/// Four-dimensional algebra: even `ε`, odd `a1, a2, a3`, with `[a1,a2] = ε`,
/// `ε·a1 = μa3`, `α = 1`, `β = diag(μ, μ⁻¹, μ)`.
pub fn m4(mu: &Scalar) -> Result<Hla> {
    let inv = nonzero("mu", mu)?;
    let mut a = Hla::new("M4", 1, 3);
    a.set_bracket(0, 1, 0, Scalar::one())?;
    a.set_even_odd(0, 0, 2, mu.clone());
    a.beta = Mat::diag(&[mu.clone(), inv, mu.clone()]);
    Ok(a)
}

/// The four-dimensional algebra `M`, its quotient `N = M/span{a3}`, the
/// action of `N` on `M` through the linear lift, the crossed module
/// `(M, N, π)` and its Cat¹ structure on `N ⋉ M`.
#[derive(Clone, Debug)]
pub struct M4Bundle {
    pub m: Hla,
    pub n: Hla,
    pub pi0: Mat,
    pub pi1: Mat,
    pub action: Action,
    pub xmod: CrossedModule,
    pub cat1: Cat1,
}

pub fn m4_bundle(mu: &Scalar) -> Result<M4Bundle> {
    let m = m4(mu)?;
    let a3 = Mat::from_ints(&[&[0], &[0], &[1]]);
    let qt = quotient_hla(&m, &Mat::zeros(1, 0), &a3)?;
    let xmod = from_nested_ideals(
        &m,
        &Mat::identity(1),
        &Mat::identity(3),
        &Mat::zeros(1, 0),
        &a3,
    )?;
    let cat1 = xmod_to_cat1(&xmod)?;
    Ok(M4Bundle {
        n: qt.algebra.with_name("N"),
        pi0: qt.pi0,
        pi1: qt.pi1,
        action: xmod.act.clone(),
        m,
        xmod,
        cat1,
    })
}

/// Finite index window of the infinite-dimensional conformal algebra with
/// basis `ε_n` (n ∈ ℤ, even) and `a_i` (i ∈ ℤ+½, odd). Half-integer
/// indices are stored doubled (`i2 = 2i`, odd). `q` must be the square of a
/// positive rational so that every `q^i` is rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1Window {
    pub q: Scalar,
    root: Scalar,
    pub n_lo: i64,
    pub n_hi: i64,
    pub i2_lo: i64,
    pub i2_hi: i64,
}

fn doubled_half_integer(name: &str, i: &Scalar) -> Result<i64> {
    (i + i)
        .to_i64()
        .filter(|d| d.rem_euclid(2) == 1)
        .ok_or_else(|| {
            Error::Parameter(format!(
                "{name} must be a half-integer such as 1/2, got {i}"
            ))
        })
}

impl K1Window {
    pub fn new(q: &Scalar, n_lo: i64, n_hi: i64, i_lo: &Scalar, i_hi: &Scalar) -> Result<Self> {
        if q.is_zero() || q.is_one() {
            return Err(Error::Parameter("q must differ from 0 and 1".into()));
        }
        let root = q.sqrt_exact().filter(|r| !r.is_negative()).ok_or_else(|| {
            Error::Parameter(format!("q = {q} must be the square of a positive rational"))
        })?;
        let (i2_lo, i2_hi) = (
            doubled_half_integer("i_lo", i_lo)?,
            doubled_half_integer("i_hi", i_hi)?,
        );
        if n_lo > n_hi || i2_lo > i2_hi {
            return Err(Error::Parameter("empty index window".into()));
        }
        Ok(K1Window {
            q: q.clone(),
            root,
            n_lo,
            n_hi,
            i2_lo,
            i2_hi,
        })
    }

    pub fn evens(&self) -> impl Iterator<Item = i64> {
        self.n_lo..=self.n_hi
    }

    /// Doubled odd indices in the window.
    pub fn odds(&self) -> impl Iterator<Item = i64> {
        (self.i2_lo..=self.i2_hi).filter(|d| d.rem_euclid(2) == 1)
    }

    /// `q^i` for `i = i2/2`.
    pub fn qpow(&self, i2: i64) -> Scalar {
        self.root.pow(i2).expect("root is nonzero")
    }

    /// `{i} = (q^i − 1)/(q − 1)`.
    pub fn brace(&self, i2: i64) -> Scalar {
        let den = &self.q - &Scalar::one();
        &(&self.qpow(i2) - &Scalar::one()) * &den.recip().expect("q ≠ 1")
    }

    /// `β(a_i) = (1 + q^i) a_i`.
    pub fn beta(&self, i2: i64) -> Scalar {
        &Scalar::one() + &self.qpow(i2)
    }

    /// `ε_n·a_i = ½(1 + q^i) a_{n+i}`: returns the doubled output index and the coefficient.
    pub fn even_odd(&self, n: i64, i2: i64) -> (i64, Scalar) {
        (2 * n + i2, &Scalar::half() * &self.beta(i2))
    }

    /// `[a_i, a_j] = ½({j} − {i}) ε_{i+j}`.
    pub fn bracket(&self, i2: i64, j2: i64) -> (i64, Scalar) {
        (
            (i2 + j2) / 2,
            &Scalar::half() * &(&self.brace(j2) - &self.brace(i2)),
        )
    }

    /// All structure constants with both inputs in the window.
    pub fn table(&self) -> K1Table {
        let half = |i2: i64| Scalar::frac(i2, 2);
        let mut entries = Vec::new();
        for n in self.evens() {
            for m in self.evens() {
                entries.push(K1Entry {
                    product: K1Product::EvenEven,
                    left: Scalar::int(n),
                    right: Scalar::int(m),
                    out: Scalar::int(n + m),
                    coef: Scalar::one(),
                });
            }
            for i2 in self.odds() {
                let (o, c) = self.even_odd(n, i2);
                entries.push(K1Entry {
                    product: K1Product::EvenOdd,
                    left: Scalar::int(n),
                    right: half(i2),
                    out: half(o),
                    coef: c,
                });
            }
        }
        for i2 in self.odds() {
            for j2 in self.odds() {
                let (o, c) = self.bracket(i2, j2);
                entries.push(K1Entry {
                    product: K1Product::Bracket,
                    left: half(i2),
                    right: half(j2),
                    out: Scalar::int(o),
                    coef: c,
                });
            }
        }
        K1Table {
            q: self.q.clone(),
            n_lo: self.n_lo,
            n_hi: self.n_hi,
            i_lo: half(self.i2_lo),
            i_hi: half(self.i2_hi),
            entries,
            beta: self.odds().map(|i2| (half(i2), self.beta(i2))).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum K1Product {
    EvenEven,
    EvenOdd,
    Bracket,
}

/// One structure constant `left ∘ right = coef · out`, indices as rationals.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct K1Entry {
    pub product: K1Product,
    pub left: Scalar,
    pub right: Scalar,
    pub out: Scalar,
    pub coef: Scalar,
}

/// Spot-check table of the conformal algebra over a window. Not an algebra:
/// products may leave the window.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct K1Table {
    pub q: Scalar,
    pub n_lo: i64,
    pub n_hi: i64,
    pub i_lo: Scalar,
    pub i_hi: Scalar,
    pub entries: Vec<K1Entry>,
    /// `(i, c)` with `β(a_i) = c·a_i`; the even twist is the identity.
    pub beta: Vec<(Scalar, Scalar)>,
}

impl K1Table {
    fn lookup(
        &self,
        product: K1Product,
        left: &Scalar,
        right: &Scalar,
    ) -> Result<(Scalar, Scalar)> {
        self.entries
            .iter()
            .find(|e| e.product == product && &e.left == left && &e.right == right)
            .map(|e| (e.out.clone(), e.coef.clone()))
            .ok_or_else(|| Error::Parameter(format!("no table entry for {left} and {right}")))
    }

    fn beta_of(&self, i: &Scalar) -> Result<Scalar> {
        self.beta
            .iter()
            .find(|(j, _)| j == i)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| Error::Parameter(format!("no twist entry for a_{i}")))
    }

    /// Evaluates `α(ε_n)·(ε_m·a_i) = ½(ε_n·ε_m)·β(a_i)` from the table
    /// entries alone, for every `ε_n`, `a_i` in the window and the given
    /// middle index `m`. Witness: positions of `n` and `i` in the window.
    pub fn even_odd_half_assoc(&self, m: i64) -> Result<Vec<IdentityReport>> {
        let mut c = Collector::default();
        let ns: Vec<Scalar> = self
            .entries
            .iter()
            .filter(|e| e.product == K1Product::EvenEven && e.left == e.right)
            .map(|e| e.left.clone())
            .collect();
        let mid = Scalar::int(m);
        for (pn, n) in ns.iter().enumerate() {
            for (pi, (i, b)) in self.beta.iter().enumerate() {
                // α is the identity on even elements.
                let (j, c1) = self.lookup(K1Product::EvenOdd, &mid, i)?;
                let (k, c2) = self.lookup(K1Product::EvenOdd, n, &j)?;
                let (nm, c3) = self.lookup(K1Product::EvenEven, n, &mid)?;
                let (k2, c4) = self.lookup(K1Product::EvenOdd, &nm, i)?;
                let _ = self.beta_of(i)?;
                let lhs = &c1 * &c2;
                let rhs = &(&Scalar::half() * &c3) * &(b * &c4);
                let (lhs, rhs) = if k == k2 {
                    (vec![lhs], vec![rhs])
                } else {
                    (vec![lhs, Scalar::zero()], vec![Scalar::zero(), rhs])
                };
                c.check(hla_names::EVEN_ODD_HALF, &[pn, pi], lhs, rhs);
            }
        }
        Ok(c.finish())
    }
}

/// Even `t^1..t^D`, odd `y_1..y_D` with `t^a t^b = t^{a+b}`,
/// `t^a·y_j = ½ y_{a+j}`, `[y_i, y_j] = (j − i) t^{i+j}` (zero above degree
/// D), twisted by `λ^degree`: every product is scaled by `λ^{output degree}`
/// and `α = β = diag(λ^k)`.
pub fn graded_truncated(d: usize, lambda: &Scalar) -> Result<Hla> {
    nonzero("lambda", lambda)?;
    let lp = |k: usize| lambda.pow(k as i64).expect("lambda is nonzero");
    let mut b = Hla::new(&format!("T{d}"), d, d);
    for a in 1..=d {
        for c in 1..=d {
            if a + c > d {
                continue;
            }
            b.set_even_even(a - 1, c - 1, a + c - 1, lp(a + c));
            b.set_even_odd(a - 1, c - 1, a + c - 1, &Scalar::half() * &lp(a + c));
            if a < c {
                let k = Scalar::int((c - a) as i64);
                b.set_bracket(a - 1, c - 1, a + c - 1, &k * &lp(a + c))?;
            }
        }
    }
    let tw = Mat::diag(&(1..=d).map(lp).collect::<Vec<_>>());
    b.alpha = tw.clone();
    b.beta = tw;
    Ok(b)
}

/// Columns `e_k` for degrees `k ≥ from` in the graded truncated algebra.
fn degrees_from(d: usize, from: usize) -> Mat {
    Mat::identity(d).block(0, d, from - 1, d + 1 - from)
}

/// Extension with nonzero kernel and cokernel: `B = graded_truncated(8, −1)`,
/// `V = I` (degree ≥ 4), `𝔞 = B/J` (J: degree ≥ 6). Kernel and cokernel are
/// both three-dimensional in each parity, and every component of the
/// 3-cocycle is nonzero.
pub fn derived_extension_xmod() -> Result<CrossedModule> {
    let b = graded_truncated(8, &Scalar::int(-1))?;
    let (i, j) = (degrees_from(8, 4), degrees_from(8, 6));
    from_nested_ideals(&b, &i, &i, &j, &j)
}

/// Split extension: `B = K3(2) ⋉ (K3 ⊕ K3)` with the adjoint action on both
/// copies and zero products between them. `V = K3 ⊕ K3`, `𝔞 = B/(first copy)`,
/// so the kernel is the first copy and `K3(2)` is a subalgebra splitting the
/// projection onto the cokernel.
pub fn split_extension_xmod() -> Result<CrossedModule> {
    let k = k3(&Scalar::int(2))?;
    let ad = HomModule::adjoint(&k);
    let rep = ad.direct_sum(&ad);
    let mut w = Hla::new("W", rep.dim_even, rep.dim_odd);
    w.alpha = rep.alpha_v.clone();
    w.beta = rep.beta_v.clone();
    let b = semidirect(&Action::new(k.clone(), w, rep)?)?.algebra;
    let (n0, n1) = (k.dim_even, k.dim_odd);
    let i0 = Mat::zeros(n0, 2 * n0).vcat(&Mat::identity(2 * n0));
    let i1 = Mat::zeros(n1, 2 * n1).vcat(&Mat::identity(2 * n1));
    let j0 = i0.block(0, 3 * n0, 0, n0);
    let j1 = i1.block(0, 3 * n1, 0, n1);
    from_nested_ideals(&b, &i0, &i1, &j0, &j1)
}

/// Split extension `0 → 0 → 0 → K3(2) → K3(2) → 0`.
pub fn trivial_split_xmod() -> Result<CrossedModule> {
    Ok(zero_xmod(&k3(&Scalar::int(2))?))
}

/// Every map `L·Y·R` commuting with `tw` (square, acting on the codomain of
/// `L` and the domain of `R`, which coincide).
fn equivariant_sandwiches(l: &Mat, r: &Mat, tw: &Mat) -> Vec<Mat> {
    let (yr, yc) = (l.cols(), r.rows());
    let units: Vec<Mat> = (0..yr * yc)
        .map(|k| &(l * &unvec(&unit_vec(yr * yc, k), yr, yc)) * r)
        .collect();
    let cols: Vec<_> = units
        .iter()
        .map(|m| vec_of(&(&(tw * m) - &(m * tw))))
        .collect();
    let n = tw.rows() * tw.cols();
    kernel_basis(&Mat::from_cols(n, &cols))
        .columns()
        .into_iter()
        .map(|y| {
            units
                .iter()
                .zip(&y)
                .fold(Mat::zeros(l.rows(), r.cols()), |acc, (m, c)| {
                    &acc + &m.scale(c)
                })
        })
        .filter(|m| !m.is_zero())
        .collect()
}

fn sum_or_zero(ms: Vec<Mat>, n: usize) -> Mat {
    ms.iter().fold(Mat::zeros(n, n), |acc, m| &acc + m)
}

/// Two extensions with the same kernel and cokernel related by a crossed
/// module isomorphism that is not the identity.
#[derive(Clone, Debug)]
pub struct EquivalentPair {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub morphism: XModMorphism,
}

/// Transports `x` along `P_V = id + κ` and `P_𝔞 = id + η`, where κ maps V
/// into the kernel and kills it, η maps 𝔞 into the image and kills it, and
/// both commute with the twists. The transport is an isomorphism inducing
/// the identity on kernel and cokernel.
pub fn equivalent_pair(x: &CrossedModule) -> Result<EquivalentPair> {
    let (v, a) = (x.top(), x.base());
    let p = |d: &Mat, tw_v: &Mat| -> Mat {
        let k = kernel_basis(d);
        let (_, proj) = cokernel_complement(&k);
        let n = tw_v.rows();
        &Mat::identity(n) + &sum_or_zero(equivariant_sandwiches(&k, &proj, tw_v), n)
    };
    let q = |d: &Mat, tw_a: &Mat| -> Mat {
        let (img, _) = image_basis(d);
        let (_, proj) = cokernel_complement(&img);
        let n = tw_a.rows();
        &Mat::identity(n) + &sum_or_zero(equivariant_sandwiches(&img, &proj, tw_a), n)
    };
    let pv = (p(&x.d0, &v.alpha), p(&x.d1, &v.beta));
    let pa = (q(&x.d0, &a.alpha), q(&x.d1, &a.beta));
    let target = transport_xmod(x, (&pv.0, &pv.1), (&pa.0, &pa.1))?;
    Ok(EquivalentPair {
        morphism: XModMorphism {
            source: x.clone(),
            target: target.clone(),
            phi: pv,
            psi: pa,
        },
        source: x.clone(),
        target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hla::validate_hla;
    use crate::xmod::{check_xmod_morphism, validate_xmod};

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn k1_brace_at_half() {
        let w = K1Window::new(&q("4"), -1, 1, &q("-1/2"), &q("1/2")).unwrap();
        assert_eq!(w.brace(1), q("1/3"));
        assert_eq!(w.brace(-1), q("-1/6"));
        let (out, c) = w.bracket(1, -1);
        assert_eq!(out, 0);
        assert_eq!(c, q("-1/4"));
        assert_eq!(w.table().entries.len(), 9 + 6 + 4);
    }

    #[test]
    fn k1_window_rejects_bad_parameters() {
        let h = q("1/2");
        assert!(K1Window::new(&q("1"), 0, 1, &h, &h).is_err());
        assert!(K1Window::new(&q("0"), 0, 1, &h, &h).is_err());
        assert!(K1Window::new(&q("2"), 0, 1, &h, &h).is_err());
        assert!(K1Window::new(&q("4"), 0, 1, &q("1"), &h).is_err());
        assert!(K1Window::new(&q("9/4"), 0, 1, &h, &q("5/2")).is_ok());
    }

    #[test]
    fn k1_identity_holds_with_unit_middle_only() {
        let t = K1Window::new(&q("4"), -1, 1, &q("-1/2"), &q("1/2"))
            .unwrap()
            .table();
        assert!(t.even_odd_half_assoc(0).unwrap().is_empty());
        // With ε₁ in the middle the identity fails: at (ε₀, ε₁, a_½),
        // α(ε₀)·(ε₁·a_½) = ½·3·½·9 a_{3/2} but ½(ε₀·ε₁)·β(a_½) = ½·3·½·3 a_{3/2}.
        let w = K1Window::new(&q("4"), 0, 1, &q("1/2"), &q("1/2")).unwrap();
        let (j, c1) = w.even_odd(1, 1);
        let (_, c2) = w.even_odd(0, j);
        let (_, c3) = w.even_odd(1, 1);
        assert_eq!(&c1 * &c2, q("27/4"));
        assert_eq!(&(&Scalar::half() * &w.beta(1)) * &c3, q("9/4"));
    }

    #[test]
    fn graded_truncated_is_valid() {
        for l in ["1", "-1", "2"] {
            let b = graded_truncated(5, &q(l)).unwrap();
            assert!(validate_hla(&b).unwrap().is_empty(), "lambda {l}");
        }
    }

    #[test]
    fn corpus_crossed_modules_are_valid() {
        for x in [
            derived_extension_xmod().unwrap(),
            split_extension_xmod().unwrap(),
            trivial_split_xmod().unwrap(),
        ] {
            assert!(validate_xmod(&x).unwrap().is_empty());
        }
        let x = derived_extension_xmod().unwrap();
        assert_eq!((x.base().dim_even, x.base().dim_odd), (5, 5));
        assert_eq!((x.top().dim_even, x.top().dim_odd), (5, 5));
    }

    #[test]
    fn equivalent_pair_is_nontrivial_isomorphism() {
        let pair = equivalent_pair(&derived_extension_xmod().unwrap()).unwrap();
        let m = &pair.morphism;
        assert!(check_xmod_morphism(m).unwrap().is_empty());
        assert!(m.is_invertible());
        assert!(!m.phi.0.is_identity() && !m.phi.1.is_identity());
        assert!(!m.psi.0.is_identity() && !m.psi.1.is_identity());
        assert!(validate_xmod(&pair.target).unwrap().is_empty());
        assert_ne!(pair.source.base(), pair.target.base());
    }
}
