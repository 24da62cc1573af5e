//! JSON interchange: a self-describing envelope with a `kind` field.
//!
//! Matrices are dense lists of rows of rational strings. Structure constants
//! and action tensors are sparse entry lists `[i, j, k, "p/q"]`. The even
//! product is emitted with `i ≤ j` and the bracket with `i < j`; on load both
//! are completed by symmetry, and a mirrored entry that disagrees is rejected.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::action::Action;
use crate::cat1::Cat1;
use crate::cohomology::{Cochain2, Cochain3, SectionPair, ValueSpace};
use crate::corpus::K1Table;
use crate::error::{Error, Result};
use crate::exactq::{Mat, Scalar, Tensor3, Tensor4};
use crate::hla::{Hla, HlaMorphism};
use crate::representation::HomModule;
use crate::xmod::CrossedModule;

type Rows = Vec<Vec<Scalar>>;
type Entry3 = (usize, usize, usize, Scalar);

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub name: String,
    pub dim_even: usize,
    pub dim_odd: usize,
    pub alpha: Rows,
    pub beta: Rows,
    #[serde(default)]
    pub even_even: Vec<Entry3>,
    #[serde(default)]
    pub even_odd: Vec<Entry3>,
    #[serde(default)]
    pub odd_odd: Vec<Entry3>,
}

/// A module over an algebra: twists on V and the four action tensors.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub dim_even: usize,
    pub dim_odd: usize,
    pub alpha: Rows,
    pub beta: Rows,
    #[serde(default)]
    pub even_on_even: Vec<Entry3>,
    #[serde(default)]
    pub even_on_odd: Vec<Entry3>,
    #[serde(default)]
    pub odd_on_even: Vec<Entry3>,
    #[serde(default)]
    pub odd_on_odd: Vec<Entry3>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub acting: AlgebraDoc,
    pub acted: AlgebraDoc,
    pub module: ModuleDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XmodDoc {
    pub action: ActionDoc,
    pub d0: Rows,
    pub d1: Rows,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorDoc {
    pub dims: Vec<usize>,
    /// `[[indices...], "value"]`
    pub entries: Vec<(Vec<usize>, Scalar)>,
}

/// The JSON envelope.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Document {
    Algebra(AlgebraDoc),
    Module {
        algebra: AlgebraDoc,
        module: ModuleDoc,
    },
    Action(ActionDoc),
    Xmod(XmodDoc),
    Cat1 {
        algebra: AlgebraDoc,
        sub_even: Rows,
        sub_odd: Rows,
        s0: Rows,
        s1: Rows,
        t0: Rows,
        t1: Rows,
    },
    /// A crossed module with chosen sections; σ is in image-basis coordinates.
    Extension {
        xmod: XmodDoc,
        seed: u64,
        s0: Rows,
        s1: Rows,
        sigma0: Rows,
        sigma1: Rows,
    },
    Cochain {
        values: ValueSpace,
        degree: usize,
        #[serde(default)]
        seed: Option<u64>,
        components: Vec<TensorDoc>,
    },
    Morphism {
        source: AlgebraDoc,
        target: AlgebraDoc,
        phi0: Rows,
        phi1: Rows,
    },
    K1Table(K1Table),
}

/// A loaded document as library values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bundle {
    Algebra(Hla),
    Module {
        algebra: Hla,
        module: HomModule,
    },
    Action(Action),
    Xmod(CrossedModule),
    Cat1(Cat1),
    Extension {
        xmod: CrossedModule,
        sections: SectionPair,
    },
    Cochain2 {
        seed: Option<u64>,
        cochain: Cochain2,
    },
    Cochain3 {
        seed: Option<u64>,
        cochain: Cochain3,
    },
    Morphism(HlaMorphism),
    K1Table(K1Table),
}

impl Bundle {
    pub fn kind(&self) -> &'static str {
        match self {
            Bundle::Algebra(_) => "algebra",
            Bundle::Module { .. } => "module",
            Bundle::Action(_) => "action",
            Bundle::Xmod(_) => "xmod",
            Bundle::Cat1(_) => "cat1",
            Bundle::Extension { .. } => "extension",
            Bundle::Cochain2 { .. } | Bundle::Cochain3 { .. } => "cochain",
            Bundle::Morphism(_) => "morphism",
            Bundle::K1Table(_) => "k1-table",
        }
    }
}

fn bad(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Dimension(format!("{field}: {msg}"))
}

fn rows_of(m: &Mat) -> Rows {
    m.to_rows()
}

/// Dense matrix with the expected number of rows; `cols` is inferred when
/// not known, from the first row (zero if there are no rows).
fn mat(field: &str, rows: &Rows, nr: usize, nc: Option<usize>) -> Result<Mat> {
    if rows.len() != nr {
        return Err(bad(
            field,
            format!("expected {nr} rows, got {}", rows.len()),
        ));
    }
    let nc = nc.unwrap_or_else(|| rows.first().map_or(0, |r| r.len()));
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != nc) {
        return Err(bad(
            field,
            format!("row {i} has {} entries, expected {nc}", r.len()),
        ));
    }
    if nr == 0 {
        return Ok(Mat::zeros(0, nc));
    }
    Ok(Mat::from_rows(rows.clone()))
}

fn entries_of(t: &Tensor3, keep: impl Fn(usize, usize) -> bool) -> Vec<Entry3> {
    t.entries()
        .filter(|&(i, j, _, _)| keep(i, j))
        .map(|(i, j, k, v)| (i, j, k, v.clone()))
        .collect()
}

fn in_range(field: &str, e: &Entry3, d: (usize, usize, usize)) -> Result<()> {
    if e.0 >= d.0 || e.1 >= d.1 || e.2 >= d.2 {
        return Err(bad(
            field,
            format!(
                "entry [{}, {}, {}] outside {}x{}x{}",
                e.0, e.1, e.2, d.0, d.1, d.2
            ),
        ));
    }
    Ok(())
}

/// Sparse tensor without symmetry; duplicate index triples are rejected.
fn tensor(field: &str, es: &[Entry3], d: (usize, usize, usize)) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(d.0, d.1, d.2);
    let mut seen = BTreeMap::new();
    for e in es {
        in_range(field, e, d)?;
        if seen.insert((e.0, e.1, e.2), ()).is_some() {
            return Err(bad(
                field,
                format!("duplicate entry [{}, {}, {}]", e.0, e.1, e.2),
            ));
        }
        t.set(e.0, e.1, e.2, e.3.clone());
    }
    Ok(t)
}

/// Entries keyed by the ordered pair `i ≤ j`; mirrored entries are negated
/// first when `antisymmetric`.
fn symmetric_entries(
    field: &str,
    es: &[Entry3],
    d: (usize, usize, usize),
    antisymmetric: bool,
) -> Result<BTreeMap<(usize, usize, usize), Scalar>> {
    let mut seen = BTreeMap::new();
    let mut out: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for e in es {
        in_range(field, e, d)?;
        if seen.insert((e.0, e.1, e.2), ()).is_some() {
            return Err(bad(
                field,
                format!("duplicate entry [{}, {}, {}]", e.0, e.1, e.2),
            ));
        }
        if antisymmetric && e.0 == e.1 && !e.3.is_zero() {
            return Err(bad(
                field,
                format!("diagonal entry [{}, {}, {}] must be zero", e.0, e.1, e.2),
            ));
        }
        let (key, v) = if e.0 <= e.1 {
            ((e.0, e.1, e.2), e.3.clone())
        } else if antisymmetric {
            ((e.1, e.0, e.2), -&e.3)
        } else {
            ((e.1, e.0, e.2), e.3.clone())
        };
        if let Some(prev) = out.get(&key) {
            if prev != &v {
                return Err(bad(
                    field,
                    format!(
                        "entries [{}, {}, {}] and [{}, {}, {}] conflict",
                        e.0, e.1, e.2, e.1, e.0, e.2
                    ),
                ));
            }
        }
        out.insert(key, v);
    }
    Ok(out)
}

pub fn algebra_to_doc(a: &Hla) -> AlgebraDoc {
    AlgebraDoc {
        name: a.name.clone(),
        dim_even: a.dim_even,
        dim_odd: a.dim_odd,
        alpha: rows_of(&a.alpha),
        beta: rows_of(&a.beta),
        even_even: entries_of(a.m00(), |i, j| i <= j),
        even_odd: entries_of(a.m01(), |_, _| true),
        odd_odd: entries_of(a.brk(), |i, j| i < j),
    }
}

pub fn algebra_from_doc(d: &AlgebraDoc) -> Result<Hla> {
    let (n0, n1) = (d.dim_even, d.dim_odd);
    let mut a = Hla::new(&d.name, n0, n1);
    a.alpha = mat("alpha", &d.alpha, n0, Some(n0))?;
    a.beta = mat("beta", &d.beta, n1, Some(n1))?;
    for ((i, j, k), v) in symmetric_entries("even_even", &d.even_even, (n0, n0, n0), false)? {
        a.set_even_even(i, j, k, v);
    }
    let m01 = tensor("even_odd", &d.even_odd, (n0, n1, n1))?;
    for (i, j, k, v) in m01.entries() {
        a.set_even_odd(i, j, k, v.clone());
    }
    for ((i, j, k), v) in symmetric_entries("odd_odd", &d.odd_odd, (n1, n1, n0), true)? {
        a.set_bracket(i, j, k, v)?;
    }
    Ok(a)
}

pub fn module_to_doc(m: &HomModule) -> ModuleDoc {
    let all = |t: &Tensor3| entries_of(t, |_, _| true);
    ModuleDoc {
        dim_even: m.dim_even,
        dim_odd: m.dim_odd,
        alpha: rows_of(&m.alpha_v),
        beta: rows_of(&m.beta_v),
        even_on_even: all(&m.rho0_even),
        even_on_odd: all(&m.rho0_odd),
        odd_on_even: all(&m.rho1_on_even),
        odd_on_odd: all(&m.rho1_on_odd),
    }
}

pub fn module_from_doc(a: &Hla, d: &ModuleDoc) -> Result<HomModule> {
    let (n0, n1, m0, m1) = (a.dim_even, a.dim_odd, d.dim_even, d.dim_odd);
    Ok(HomModule {
        dim_even: m0,
        dim_odd: m1,
        alpha_v: mat("module.alpha", &d.alpha, m0, Some(m0))?,
        beta_v: mat("module.beta", &d.beta, m1, Some(m1))?,
        rho0_even: tensor("module.even_on_even", &d.even_on_even, (n0, m0, m0))?,
        rho0_odd: tensor("module.even_on_odd", &d.even_on_odd, (n0, m1, m1))?,
        rho1_on_even: tensor("module.odd_on_even", &d.odd_on_even, (n1, m0, m1))?,
        rho1_on_odd: tensor("module.odd_on_odd", &d.odd_on_odd, (n1, m1, m0))?,
    })
}

fn action_to_doc(act: &Action) -> ActionDoc {
    ActionDoc {
        acting: algebra_to_doc(&act.acting),
        acted: algebra_to_doc(&act.acted),
        module: module_to_doc(&act.rep),
    }
}

fn action_from_doc(d: &ActionDoc) -> Result<Action> {
    let acting = algebra_from_doc(&d.acting)?;
    let acted = algebra_from_doc(&d.acted)?;
    let rep = module_from_doc(&acting, &d.module)?;
    Action::new(acting, acted, rep)
}

fn xmod_to_doc(x: &CrossedModule) -> XmodDoc {
    XmodDoc {
        action: action_to_doc(&x.act),
        d0: rows_of(&x.d0),
        d1: rows_of(&x.d1),
    }
}

fn xmod_from_doc(d: &XmodDoc) -> Result<CrossedModule> {
    let act = action_from_doc(&d.action)?;
    let (a, v) = (&act.acting, &act.acted);
    let x = CrossedModule {
        d0: mat("d0", &d.d0, a.dim_even, Some(v.dim_even))?,
        d1: mat("d1", &d.d1, a.dim_odd, Some(v.dim_odd))?,
        act,
    };
    x.check_shape()?;
    Ok(x)
}

fn tensor3_doc(t: &Tensor3) -> TensorDoc {
    let (a, b, c) = t.dims();
    TensorDoc {
        dims: vec![a, b, c],
        entries: t
            .entries()
            .map(|(i, j, k, v)| (vec![i, j, k], v.clone()))
            .collect(),
    }
}

fn tensor4_doc(t: &Tensor4) -> TensorDoc {
    TensorDoc {
        dims: t.dims().to_vec(),
        entries: t
            .entries()
            .map(|(ix, v)| (ix.to_vec(), v.clone()))
            .collect(),
    }
}

fn check_entries(field: &str, t: &TensorDoc, order: usize) -> Result<()> {
    if t.dims.len() != order {
        return Err(bad(field, format!("expected {order} dimensions")));
    }
    let mut seen = BTreeMap::new();
    for (ix, _) in &t.entries {
        if ix.len() != order || ix.iter().zip(&t.dims).any(|(i, d)| i >= d) {
            return Err(bad(field, format!("entry {ix:?} outside {:?}", t.dims)));
        }
        if seen.insert(ix.clone(), ()).is_some() {
            return Err(bad(field, format!("duplicate entry {ix:?}")));
        }
    }
    Ok(())
}

fn tensor3_from(field: &str, t: &TensorDoc) -> Result<Tensor3> {
    check_entries(field, t, 3)?;
    let mut out = Tensor3::zeros(t.dims[0], t.dims[1], t.dims[2]);
    for (ix, v) in &t.entries {
        out.set(ix[0], ix[1], ix[2], v.clone());
    }
    Ok(out)
}

fn tensor4_from(field: &str, t: &TensorDoc) -> Result<Tensor4> {
    check_entries(field, t, 4)?;
    let mut out = Tensor4::zeros([t.dims[0], t.dims[1], t.dims[2], t.dims[3]]);
    for (ix, v) in &t.entries {
        out.set([ix[0], ix[1], ix[2], ix[3]], v.clone());
    }
    Ok(out)
}

pub fn to_document(b: &Bundle) -> Document {
    match b {
        Bundle::Algebra(a) => Document::Algebra(algebra_to_doc(a)),
        Bundle::Module { algebra, module } => Document::Module {
            algebra: algebra_to_doc(algebra),
            module: module_to_doc(module),
        },
        Bundle::Action(a) => Document::Action(action_to_doc(a)),
        Bundle::Xmod(x) => Document::Xmod(xmod_to_doc(x)),
        Bundle::Cat1(c) => Document::Cat1 {
            algebra: algebra_to_doc(&c.big),
            sub_even: rows_of(&c.sub_even),
            sub_odd: rows_of(&c.sub_odd),
            s0: rows_of(&c.s0),
            s1: rows_of(&c.s1),
            t0: rows_of(&c.t0),
            t1: rows_of(&c.t1),
        },
        Bundle::Extension { xmod, sections } => Document::Extension {
            xmod: xmod_to_doc(xmod),
            seed: sections.seed,
            s0: rows_of(&sections.s0),
            s1: rows_of(&sections.s1),
            sigma0: rows_of(&sections.sigma0),
            sigma1: rows_of(&sections.sigma1),
        },
        Bundle::Cochain2 { seed, cochain } => Document::Cochain {
            values: cochain.values,
            degree: 2,
            seed: *seed,
            components: [&cochain.w0, &cochain.w1, &cochain.w2]
                .into_iter()
                .map(tensor3_doc)
                .collect(),
        },
        Bundle::Cochain3 { seed, cochain } => Document::Cochain {
            values: cochain.values,
            degree: 3,
            seed: *seed,
            components: cochain.components().into_iter().map(tensor4_doc).collect(),
        },
        Bundle::Morphism(m) => Document::Morphism {
            source: algebra_to_doc(&m.source),
            target: algebra_to_doc(&m.target),
            phi0: rows_of(&m.phi0),
            phi1: rows_of(&m.phi1),
        },
        Bundle::K1Table(t) => Document::K1Table(t.clone()),
    }
}

pub fn from_document(d: &Document) -> Result<Bundle> {
    Ok(match d {
        Document::Algebra(a) => Bundle::Algebra(algebra_from_doc(a)?),
        Document::Module { algebra, module } => {
            let algebra = algebra_from_doc(algebra)?;
            let module = module_from_doc(&algebra, module)?;
            Bundle::Module { algebra, module }
        }
        Document::Action(a) => Bundle::Action(action_from_doc(a)?),
        Document::Xmod(x) => Bundle::Xmod(xmod_from_doc(x)?),
        Document::Cat1 {
            algebra,
            sub_even,
            sub_odd,
            s0,
            s1,
            t0,
            t1,
        } => {
            let big = algebra_from_doc(algebra)?;
            let (n0, n1) = (big.dim_even, big.dim_odd);
            let sub_even = mat("sub_even", sub_even, n0, None)?;
            let sub_odd = mat("sub_odd", sub_odd, n1, None)?;
            let (k0, k1) = (sub_even.cols(), sub_odd.cols());
            let c = Cat1 {
                s0: mat("s0", s0, k0, Some(n0))?,
                s1: mat("s1", s1, k1, Some(n1))?,
                t0: mat("t0", t0, k0, Some(n0))?,
                t1: mat("t1", t1, k1, Some(n1))?,
                sub_even,
                sub_odd,
                big,
            };
            c.check_shape()?;
            Bundle::Cat1(c)
        }
        Document::Extension {
            xmod,
            seed,
            s0,
            s1,
            sigma0,
            sigma1,
        } => {
            let xmod = xmod_from_doc(xmod)?;
            let (a, v) = (xmod.base(), xmod.top());
            let sections = SectionPair {
                seed: *seed,
                s0: mat("s0", s0, a.dim_even, None)?,
                s1: mat("s1", s1, a.dim_odd, None)?,
                sigma0: mat("sigma0", sigma0, v.dim_even, None)?,
                sigma1: mat("sigma1", sigma1, v.dim_odd, None)?,
            };
            Bundle::Extension { xmod, sections }
        }
        Document::Cochain {
            values,
            degree,
            seed,
            components,
        } => match (degree, components.as_slice()) {
            (2, [w0, w1, w2]) => Bundle::Cochain2 {
                seed: *seed,
                cochain: Cochain2 {
                    values: *values,
                    w0: tensor3_from("components[0]", w0)?,
                    w1: tensor3_from("components[1]", w1)?,
                    w2: tensor3_from("components[2]", w2)?,
                },
            },
            (3, [h0, h1, h2, h3]) => Bundle::Cochain3 {
                seed: *seed,
                cochain: Cochain3 {
                    values: *values,
                    h0: tensor4_from("components[0]", h0)?,
                    h1: tensor4_from("components[1]", h1)?,
                    h2: tensor4_from("components[2]", h2)?,
                    h3: tensor4_from("components[3]", h3)?,
                },
            },
            _ => {
                return Err(bad(
                    "components",
                    format!("degree {degree} needs {} components", degree + 1),
                ))
            }
        },
        Document::Morphism {
            source,
            target,
            phi0,
            phi1,
        } => {
            let source = algebra_from_doc(source)?;
            let target = algebra_from_doc(target)?;
            Bundle::Morphism(HlaMorphism {
                phi0: mat("phi0", phi0, target.dim_even, Some(source.dim_even))?,
                phi1: mat("phi1", phi1, target.dim_odd, Some(source.dim_odd))?,
                source,
                target,
            })
        }
        Document::K1Table(t) => Bundle::K1Table(t.clone()),
    })
}

/// Parses a document. Syntax and schema errors become input errors.
pub fn load(text: &str) -> Result<Bundle> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| Error::Parameter(format!("parse error: {e}")))?;
    from_document(&doc)
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn emit(b: &Bundle) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(b)).expect("documents serialize");
    s.push('\n');
    s
}
