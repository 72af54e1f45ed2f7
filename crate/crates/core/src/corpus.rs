//! The worked examples as ready-made setups: a morphism, named elements
//! (with fraction representatives over `A` where known) and branches.

use crate::arc::{Branch, Series, DEFAULT_TRUNCATION};
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial};
use crate::rational::{int, Rational};
use crate::variety::{make_morphism, PresentedRing, RingMorphism};

#[derive(Clone, Debug)]
pub struct NamedElement {
    pub name: String,
    pub value: Polynomial,
    /// `num / den` over the source ring.
    pub representation: Option<(Polynomial, Polynomial)>,
}

#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub morphism: RingMorphism,
    pub elements: Vec<NamedElement>,
    /// Branches on the target ring.
    pub branches: Vec<Branch>,
}

impl Example {
    pub fn element(&self, name: &str) -> &NamedElement {
        self.elements.iter().find(|e| e.name == name).expect("element in example")
    }
}

fn ring(names: &[&str], rels: &[&str]) -> PresentedRing {
    PresentedRing::parse(names, rels).expect("example ring")
}

fn morphism(a: PresentedRing, b: PresentedRing, images: &[&str]) -> RingMorphism {
    let imgs = images.iter().map(|s| b.element(s).expect("image")).collect();
    make_morphism(a, b, imgs).expect("example morphism")
}

fn elem(b: &PresentedRing, name: &str, text: &str) -> NamedElement {
    NamedElement { name: name.into(), value: b.element(text).expect("element"), representation: None }
}

fn elem_rep(b: &PresentedRing, a: &PresentedRing, name: &str, text: &str, num: &str, den: &str) -> NamedElement {
    NamedElement {
        representation: Some((a.element(num).expect("numerator"), a.element(den).expect("denominator"))),
        ..elem(b, name, text)
    }
}

fn series(text: &str) -> Series {
    let p = parse_polynomial(text, &["t"], MonomialOrder::GrevLex).expect("series");
    Series::from_polynomial(&p, DEFAULT_TRUNCATION, None).expect("univariate")
}

fn branch(b: &PresentedRing, name: &str, comps: Vec<Series>) -> Branch {
    Branch::new(name, b, comps).expect("branch on the ring")
}

/// `A = ℚ[x,y]/(y² − x²(x+1))`, `B = ℚ[x,y,z]/(y² − x − 1, z(y − 1) − 1)`,
/// `π* = (x, xy)`: the normalization of the node with one preimage of the
/// singular point removed.
pub fn node_minus_point() -> Example {
    let a = ring(&["x", "y"], &["y^2 - x^2*(x + 1)"]);
    let b = ring(&["x", "y", "z"], &["y^2 - x - 1", "z*(y - 1) - 1"]);
    let m = morphism(a, b.clone(), &["x", "x*y"]);
    // through (0, −1, −1/2): z = 1/(t − 2)
    let h = DEFAULT_TRUNCATION;
    let z: Vec<Rational> = (0..h).map(|k| -Rational::new(1.into(), num_bigint::BigInt::from(2).pow(k + 1))).collect();
    let br = branch(&b, "q", vec![series("t^2 - 2*t"), series("t - 1"), Series::truncated(z, h)]);
    Example {
        name: "node-minus-point",
        elements: vec![elem(&b, "fy", "y"), elem(&b, "fz", "z")],
        branches: vec![br],
        morphism: m,
    }
}

/// The node and its normalization `ℚ[x,y]/(y² − x − 1)`, branches at the
/// two preimages `(0, ±1)` of the singular point.
pub fn node_normalization() -> Example {
    let a = ring(&["x", "y"], &["y^2 - x^2*(x + 1)"]);
    let b = ring(&["x", "y"], &["y^2 - x - 1"]);
    let m = morphism(a.clone(), b.clone(), &["x", "x*y"]);
    let branches = vec![
        branch(&b, "p", vec![series("t^2 + 2*t"), series("1 + t")]),
        branch(&b, "q", vec![series("t^2 - 2*t"), series("-1 + t")]),
    ];
    Example {
        name: "node-normalization",
        elements: vec![elem_rep(&b, &a, "fy", "y", "y", "x")],
        branches,
        morphism: m,
    }
}

/// `A = ℚ[x,y]/(y⁴ − x⁵)` normalized by `ℚ[y] ∋ y ↦ (y⁴, y⁵)`; `y` stands
/// for `y/x` and `y⁶` for `y²/x`.
pub fn y4_x5() -> Example {
    let a = ring(&["x", "y"], &["y^4 - x^5"]);
    let b = ring(&["y"], &[]);
    let m = morphism(a.clone(), b.clone(), &["y^4", "y^5"]);
    Example {
        name: "y4-x5",
        elements: vec![
            elem_rep(&b, &a, "f1", "y", "y", "x"),
            elem_rep(&b, &a, "f6", "y^6", "y^2", "x"),
        ],
        branches: vec![branch(&b, "b", vec![series("t")])],
        morphism: m,
    }
}

/// The cusp `y² = x³` normalized by `t ↦ (t², t³)`; `t` stands for `y/x`.
pub fn cusp() -> Example {
    let a = ring(&["x", "y"], &["y^2 - x^3"]);
    let b = ring(&["t"], &[]);
    let m = morphism(a.clone(), b.clone(), &["t^2", "t^3"]);
    Example {
        name: "cusp",
        elements: vec![elem_rep(&b, &a, "ft", "t", "y", "x"), elem(&b, "ft2", "t^2")],
        branches: vec![branch(&b, "c", vec![series("t")])],
        morphism: m,
    }
}

/// Three lines `xy(y − x) = 0` and their normalization, three disjoint
/// lines with idempotents `e1` (line `y = 0`), `e2` (line `x = 0`) and
/// `1 − e1 − e2` (line `y = x`). `f = 2xy/(x + y)` is `t` on the diagonal
/// line and `0` elsewhere.
pub fn triple_line() -> Example {
    let a = ring(&["x", "y"], &["x*y*(y - x)"]);
    let b = ring(&["t", "e1", "e2"], &["e1^2 - e1", "e2^2 - e2", "e1*e2"]);
    let m = morphism(a.clone(), b.clone(), &["t*(1 - e2)", "t*(1 - e1)"]);
    let one = || Series::constant(int(1), DEFAULT_TRUNCATION);
    let zero = || Series::exact_zero(DEFAULT_TRUNCATION);
    let branches = vec![
        branch(&b, "l0", vec![series("t"), one(), zero()]),
        branch(&b, "linf", vec![series("t"), zero(), one()]),
        branch(&b, "diag", vec![series("t"), zero(), zero()]),
    ];
    Example {
        name: "triple-line",
        elements: vec![
            elem_rep(&b, &a, "f", "t*(1 - e1 - e2)", "2*x*y", "x + y"),
            elem(&b, "h", "1 - e1 - e2"),
        ],
        branches,
        morphism: m,
    }
}

pub fn all() -> Vec<Example> {
    vec![node_minus_point(), node_normalization(), y4_x5(), cusp(), triple_line()]
}
