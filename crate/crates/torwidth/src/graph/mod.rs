//! Closed-form torsion for graph manifolds.
//!
//! A graph structure is a bipartite gluing graph: each vertex is a circle
//! bundle over a surface with negative Euler characteristic, carries the
//! class value `m` and the character value `alpha` of its fiber, and
//! exposes numbered boundary slots; each edge glues one slot on the plus
//! side to one slot on the minus side. For a cyclic representation `W`
//! whose powers all avoid the eigenvalue one, the torsion collapses to the
//! product over vertices of `det(I - t^m W^alpha)` raised to the Euler
//! characteristic, so widths add with multiplicity `|chi|` and the bound
//! can be compared against the norm `sum |chi| * |m|` without any Fox
//! calculus.

use thiserror::Error;

use crate::algebra::{LaurentPoly, PolyMatrix, RatFn};
use crate::rep::{RepError, Representation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("duplicate vertex name {0:?}")]
    DuplicateVertexName(String),
    #[error("vertex {vertex:?} has Euler characteristic {chi}, expected negative")]
    NonNegativeEuler { vertex: String, chi: i64 },
    #[error("edge {edge} references a missing vertex or slot")]
    EdgeEndpointInvalid { edge: usize },
    #[error("edge {edge} joins two vertices on the same side")]
    SameSideEdge { edge: usize },
    #[error("slot {slot} of vertex {vertex:?} is used by more than one edge")]
    SlotReused { vertex: String, slot: usize },
    #[error("slot {slot} of vertex {vertex:?} is glued to nothing")]
    DanglingSlot { vertex: String, slot: usize },
    #[error("representation is not cyclic or repeats the eigenvalue one")]
    NotGood,
    #[error("fiber factor of vertex {vertex:?} vanishes; the complex is not acyclic")]
    VanishingFactor { vertex: String },
    #[error("fiber of vertex {vertex:?} dies in the character")]
    SeifertVanishing { vertex: String },
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphVertex {
    pub name: String,
    pub side: Side,
    /// Euler characteristic of the base surface; always negative.
    pub chi: i64,
    /// Value of the cohomology class on the fiber.
    pub m: i64,
    /// Value of the character on the fiber.
    pub alpha: i64,
    /// Number of boundary tori available for gluing.
    pub slots: usize,
}

/// An edge glues `from = (vertex, slot)` to `to = (vertex, slot)` across
/// the two sides.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphEdge {
    pub from: (usize, usize),
    pub to: (usize, usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphStructure {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<GraphEdge>,
}

impl GraphStructure {
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut names = std::collections::HashSet::new();
        for v in &self.vertices {
            if !names.insert(v.name.as_str()) {
                return Err(GraphError::DuplicateVertexName(v.name.clone()));
            }
            if v.chi >= 0 {
                return Err(GraphError::NonNegativeEuler { vertex: v.name.clone(), chi: v.chi });
            }
        }
        let mut used: Vec<Vec<usize>> = self.vertices.iter().map(|v| vec![0; v.slots]).collect();
        for (e, edge) in self.edges.iter().enumerate() {
            for &(v, s) in &[edge.from, edge.to] {
                if v >= self.vertices.len() || s >= self.vertices[v].slots {
                    return Err(GraphError::EdgeEndpointInvalid { edge: e });
                }
                used[v][s] += 1;
            }
            if self.vertices[edge.from.0].side == self.vertices[edge.to.0].side {
                return Err(GraphError::SameSideEdge { edge: e });
            }
        }
        for (v, counts) in used.iter().enumerate() {
            for (s, &c) in counts.iter().enumerate() {
                let name = || self.vertices[v].name.clone();
                if c == 0 {
                    return Err(GraphError::DanglingSlot { vertex: name(), slot: s });
                }
                if c > 1 {
                    return Err(GraphError::SlotReused { vertex: name(), slot: s });
                }
            }
        }
        Ok(())
    }

    /// The norm of the class on a fibered graph manifold:
    /// `sum |chi_v| * |m_v|`.
    pub fn en_norm(&self) -> i64 {
        self.vertices.iter().map(|v| v.chi.abs() * v.m.abs()).sum()
    }

    /// Whether every fiber survives the character mod `n`; a dead fiber
    /// breaks the closed form.
    pub fn seifert_nonvanishing(&self, n: u64) -> bool {
        self.vertices.iter().all(|v| v.alpha.rem_euclid(n as i64) != 0)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexFactor {
    pub name: String,
    pub chi: i64,
    pub m: i64,
    /// The fiber's character value reduced mod the representation order.
    pub alpha_used: u64,
    /// `det(I - t^m W^alpha)` for this vertex.
    pub poly: LaurentPoly,
    pub width: i64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphReport {
    pub factors: Vec<VertexFactor>,
    /// The torsion `prod poly_v ^ chi_v` as a rational function.
    pub torsion: RatFn,
    /// Total width `sum |chi_v| * width_v`.
    pub width: i64,
    /// The signed sum `sum chi_v * width_v`, the width of the rational
    /// function itself.
    pub signed_width: i64,
    pub en_norm: i64,
    pub dim: usize,
    pub detected: bool,
}

/// Evaluates the closed-form torsion of a validated graph structure under
/// a good cyclic representation.
pub fn graph_torsion(g: &GraphStructure, w: &Representation) -> Result<GraphReport, GraphError> {
    g.validate()?;
    if !matches!(w.is_good(), Ok(true)) {
        return Err(GraphError::NotGood);
    }
    let n = match w.group() {
        crate::rep::RepGroup::Cyclic { n } => n,
        _ => return Err(GraphError::NotGood),
    };
    let field = w.field();
    let dim = w.dim();
    let mut factors = Vec::new();
    let mut width = 0;
    let mut signed_width = 0;
    let mut num = LaurentPoly::one(field);
    let mut den = LaurentPoly::one(field);
    for v in &g.vertices {
        let alpha_used = v.alpha.rem_euclid(n as i64) as u64;
        let twisted = w.matrix(0).pow(alpha_used).to_poly_shift(v.m);
        let poly = PolyMatrix::identity(field, dim)
            .sub(&twisted)
            .expect("shapes agree")
            .det();
        if poly.is_zero() {
            return Err(GraphError::VanishingFactor { vertex: v.name.clone() });
        }
        let wv = poly.width();
        width += v.chi.abs() * wv;
        signed_width += v.chi * wv;
        for _ in 0..v.chi.abs() {
            if v.chi < 0 {
                den = den.mul(&poly);
            } else {
                num = num.mul(&poly);
            }
        }
        factors.push(VertexFactor {
            name: v.name.clone(),
            chi: v.chi,
            m: v.m,
            alpha_used,
            poly,
            width: wv,
        });
    }
    let en_norm = g.en_norm();
    Ok(GraphReport {
        factors,
        torsion: RatFn::new(num, den).expect("vertex factors are nonzero"),
        width,
        signed_width,
        en_norm,
        dim,
        detected: width == dim as i64 * en_norm,
    })
}

/// The full detection pipeline: the representation must be good, every
/// fiber must survive the character, and then the closed form must reach
/// the norm exactly.
pub fn verify_detection(g: &GraphStructure, w: &Representation) -> Result<bool, GraphError> {
    g.validate()?;
    if !matches!(w.is_good(), Ok(true)) {
        return Err(GraphError::NotGood);
    }
    let n = match w.group() {
        crate::rep::RepGroup::Cyclic { n } => n,
        _ => return Err(GraphError::NotGood),
    };
    for v in &g.vertices {
        if v.alpha.rem_euclid(n as i64) == 0 {
            return Err(GraphError::SeifertVanishing { vertex: v.name.clone() });
        }
    }
    Ok(graph_torsion(g, w)?.detected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn vertex(name: &str, side: Side, chi: i64, m: i64, alpha: i64, slots: usize) -> GraphVertex {
        GraphVertex { name: name.into(), side, chi, m, alpha, slots }
    }

    fn two_vertex_graph(m1: i64, m2: i64, a1: i64, a2: i64) -> GraphStructure {
        GraphStructure {
            vertices: vec![
                vertex("p", Side::Plus, -1, m1, a1, 1),
                vertex("q", Side::Minus, -1, m2, a2, 1),
            ],
            edges: vec![GraphEdge { from: (0, 0), to: (1, 0) }],
        }
    }

    fn aug3() -> Representation {
        Representation::augmentation(Field::Cyclotomic(3), 3).unwrap()
    }

    #[test]
    fn validation_catches_shape_errors() {
        let mut g = two_vertex_graph(1, 1, 1, 1);
        assert!(g.validate().is_ok());
        g.vertices[0].chi = 0;
        assert!(matches!(g.validate(), Err(GraphError::NonNegativeEuler { chi: 0, .. })));
        g.vertices[0].chi = -1;
        g.vertices[1].side = Side::Plus;
        assert!(matches!(g.validate(), Err(GraphError::SameSideEdge { edge: 0 })));
        g.vertices[1].side = Side::Minus;
        g.vertices[0].slots = 2;
        assert!(matches!(g.validate(), Err(GraphError::DanglingSlot { slot: 1, .. })));
        g.vertices[0].slots = 1;
        g.edges.push(GraphEdge { from: (0, 0), to: (1, 0) });
        assert!(matches!(g.validate(), Err(GraphError::SlotReused { slot: 0, .. })));
        g.edges.pop();
        g.edges[0].to = (1, 5);
        assert!(matches!(g.validate(), Err(GraphError::EdgeEndpointInvalid { edge: 0 })));
    }

    #[test]
    fn fibered_two_piece_graph_is_detected() {
        let g = two_vertex_graph(1, 1, 1, 2);
        let report = graph_torsion(&g, &aug3()).unwrap();
        assert_eq!(report.en_norm, 2);
        assert_eq!(report.dim, 2);
        assert_eq!(report.width, 4);
        assert_eq!(report.signed_width, -4);
        assert!(report.detected);
        assert!(verify_detection(&g, &aug3()).unwrap());
    }

    #[test]
    fn single_vertex_factor_matches_hand_determinant() {
        let g = GraphStructure {
            vertices: vec![
                vertex("p", Side::Plus, -2, 1, 1, 1),
                vertex("q", Side::Minus, -1, 0, 1, 1),
            ],
            edges: vec![GraphEdge { from: (0, 0), to: (1, 0) }],
        };
        let report = graph_torsion(&g, &aug3()).unwrap();
        let factor = &report.factors[0];
        assert_eq!(
            factor.poly,
            LaurentPoly::from_integers(Field::Cyclotomic(3), 0, &[1, 1, 1])
        );
        assert_eq!(factor.width, 2);
        assert_eq!(report.factors[1].width, 0);
        assert_eq!(report.width, 4);
        assert_eq!(report.en_norm, 2);
        assert!(report.detected);
    }

    #[test]
    fn zero_class_vertex_with_trivial_alpha_vanishes() {
        let mut g = two_vertex_graph(0, 1, 3, 1);
        let err = graph_torsion(&g, &aug3());
        assert!(matches!(err, Err(GraphError::VanishingFactor { .. })));
        g.vertices[0].m = 2;
        let report = graph_torsion(&g, &aug3()).unwrap();
        assert_eq!(report.factors[0].alpha_used, 0);
        assert_eq!(report.factors[0].width, 4);
        assert!(matches!(
            verify_detection(&g, &aug3()),
            Err(GraphError::SeifertVanishing { .. })
        ));
    }

    #[test]
    fn representation_must_be_good() {
        let g = two_vertex_graph(1, 1, 1, 1);
        let bad = Representation::augmentation(Field::Prime(3), 3).unwrap();
        assert!(matches!(graph_torsion(&g, &bad), Err(GraphError::NotGood)));
        let p = crate::group::Presentation::parse(&["a"], &[]).unwrap();
        let presented = Representation::trivial(Field::rational(), p.gens());
        assert!(matches!(graph_torsion(&g, &presented), Err(GraphError::NotGood)));
    }
}
