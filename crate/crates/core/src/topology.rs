//! Closed surfaces glued from polygon copies.
//!
//! The toric slice surface is `2^m` copies of the slice polygon, one per sign
//! vector `kappa`, where edge `j` of copy `kappa` is glued by the identity to
//! edge `j` of copy `s_j(kappa)` and `s_j` flips the signs where `lambda_j` is
//! odd.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::cone::PolyhedralCone;
use crate::slice::SlicePolytope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("sign-copy gluing is only defined for dimension 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("degenerate gluing: conormal {0} is even in every coordinate")]
    DegenerateGluing(usize),
    #[error("slice polygon has {polygon} edges but the cone has {conormals} conormals")]
    EdgeCountMismatch { polygon: usize, conormals: usize },
    #[error("edge {edge} of face {face} is glued {count} times")]
    BadPairing { face: usize, edge: usize, count: usize },
    #[error("gluing refers to missing edge {edge} of face {face}")]
    MissingEdge { face: usize, edge: usize },
    #[error("genus undefined: chi = {chi}, {components} component(s), orientable = {orientable}")]
    NotClosedOrientable { chi: i64, components: usize, orientable: bool },
    #[error("internal consistency: {0}")]
    Inconsistent(String),
}

/// `kappa` in `{+1, -1}^m`, stored as a bit mask (bit `i` set means
/// `kappa_i = -1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    mask: u32,
    dim: usize,
}

impl SignVector {
    pub fn from_mask(mask: u32, dim: usize) -> Self {
        debug_assert!(dim < 32 && mask >> dim == 0);
        SignVector { mask, dim }
    }

    pub fn from_signs(signs: &[i8]) -> Option<Self> {
        let mut mask = 0;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => mask |= 1 << i,
                _ => return None,
            }
        }
        Some(SignVector { mask, dim: signs.len() })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.dim).map(|i| if self.mask >> i & 1 == 1 { -1 } else { 1 }).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.signs().iter().map(|&x| if x > 0 { '+' } else { '-' }).collect();
        f.write_str(&s)
    }
}

/// `kappa_i -> (-1)^{flips_i} kappa_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeInvolution {
    flips: u32,
    dim: usize,
}

impl EdgeInvolution {
    pub fn new(flips: u32, dim: usize) -> Self {
        EdgeInvolution { flips, dim }
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    pub fn is_identity(&self) -> bool {
        self.flips == 0
    }

    pub fn apply(&self, k: SignVector) -> SignVector {
        SignVector::from_mask(k.mask ^ self.flips, self.dim)
    }
}

/// How an edge pair is identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeMap {
    /// Start to start, end to end.
    Direct,
    /// Start to end, end to start.
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgePairing {
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub map: EdgeMap,
}

/// A closed combinatorial surface: polygons with every edge glued to exactly
/// one other edge. Edge `e` of a face with `n` sides runs from local vertex
/// `e` to local vertex `e + 1 (mod n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedSurface {
    pub sides: Vec<usize>,
    pub labels: Vec<Option<SignVector>>,
    pub edge_pairings: Vec<EdgePairing>,
    /// Partition of `(face, local vertex)` pairs.
    pub vertex_orbits: Vec<Vec<(usize, usize)>>,
    /// `+1` / `-1` per face when orientable.
    pub orientation: Option<Vec<i8>>,
    pub components: usize,
}

impl GluedSurface {
    /// Builds from explicit gluings, identifying vertices by union-find.
    pub fn from_gluing(sides: Vec<usize>, edge_pairings: Vec<EdgePairing>) -> Result<Self, TopologyError> {
        let mut uses: Vec<Vec<usize>> = sides.iter().map(|&n| vec![0; n]).collect();
        for p in &edge_pairings {
            for (face, edge) in [p.a, p.b] {
                let slot = uses
                    .get_mut(face)
                    .and_then(|f| f.get_mut(edge))
                    .ok_or(TopologyError::MissingEdge { face, edge })?;
                *slot += 1;
            }
        }
        for (face, f) in uses.iter().enumerate() {
            for (edge, &count) in f.iter().enumerate() {
                if count != 1 {
                    return Err(TopologyError::BadPairing { face, edge, count });
                }
            }
        }

        let offsets: Vec<usize> = sides
            .iter()
            .scan(0, |acc, &n| {
                let o = *acc;
                *acc += n;
                Some(o)
            })
            .collect();
        let total: usize = sides.iter().sum();
        let mut uf = UnionFind::new(total);
        for p in &edge_pairings {
            let ends = |(f, e): (usize, usize)| (offsets[f] + e, offsets[f] + (e + 1) % sides[f]);
            let (a0, a1) = ends(p.a);
            let (b0, b1) = ends(p.b);
            match p.map {
                EdgeMap::Direct => {
                    uf.union(a0, b0);
                    uf.union(a1, b1);
                }
                EdgeMap::Reversed => {
                    uf.union(a0, b1);
                    uf.union(a1, b0);
                }
            }
        }
        let mut orbit_of_root = std::collections::BTreeMap::new();
        let mut vertex_orbits: Vec<Vec<(usize, usize)>> = Vec::new();
        for (f, &n) in sides.iter().enumerate() {
            for v in 0..n {
                let root = uf.find(offsets[f] + v);
                let idx = *orbit_of_root.entry(root).or_insert_with(|| {
                    vertex_orbits.push(Vec::new());
                    vertex_orbits.len() - 1
                });
                vertex_orbits[idx].push((f, v));
            }
        }

        let orientation = orient(sides.len(), &edge_pairings);
        let components = face_components(sides.len(), &edge_pairings).len();
        Ok(GluedSurface {
            labels: vec![None; sides.len()],
            sides,
            edge_pairings,
            vertex_orbits,
            orientation,
            components,
        })
    }

    pub fn face_count(&self) -> usize {
        self.sides.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_pairings.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_orbits.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn is_orientable(&self) -> bool {
        self.orientation.is_some()
    }

    pub fn is_connected(&self) -> bool {
        self.components == 1
    }

    pub fn genus(&self) -> Result<i64, TopologyError> {
        genus(self)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Two-colours faces so every glued edge is traversed in opposite
/// directions: a reversed gluing forces equal orientations, a direct one
/// forces opposite ones.
fn orient(faces: usize, pairings: &[EdgePairing]) -> Option<Vec<i8>> {
    let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); faces];
    for p in pairings {
        let rel = match p.map {
            EdgeMap::Direct => -1,
            EdgeMap::Reversed => 1,
        };
        adj[p.a.0].push((p.b.0, rel));
        adj[p.b.0].push((p.a.0, rel));
    }
    let mut colour = vec![0i8; faces];
    for start in 0..faces {
        if colour[start] != 0 {
            continue;
        }
        colour[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &(g, rel) in &adj[f] {
                let want = colour[f] * rel;
                if colour[g] == 0 {
                    colour[g] = want;
                    queue.push_back(g);
                } else if colour[g] != want {
                    return None;
                }
            }
        }
    }
    Some(colour)
}

fn face_components(faces: usize, pairings: &[EdgePairing]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); faces];
    for p in pairings {
        adj[p.a.0].push(p.b.0);
        adj[p.b.0].push(p.a.0);
    }
    let mut seen = vec![false; faces];
    let mut out = Vec::new();
    for start in 0..faces {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if !seen[g] {
                    seen[g] = true;
                    comp.push(g);
                    queue.push_back(g);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Rank over `F_2` of a set of bit masks.
pub fn f2_rank(masks: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &m in masks {
        let mut x = m;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Facet index carried by local edge `edge` of a sign copy of a `d`-gon.
pub fn sign_copy_facet(edge: usize, d: usize) -> usize {
    (edge + 1) % d
}

/// `2^m` copies of a `d`-gon, facet `j` being the edge from polygon vertex
/// `j - 1` to polygon vertex `j`, glued by the involutions `flips[j]`.
///
/// Vertex orbits are enumerated as orbits of `<s_k, s_{k+1}>` on sign
/// vectors (vertex `k` sits between edges `k` and `k + 1`) and must agree
/// with the union-find identification.
pub fn glue_sign_copies(dim: usize, flips: &[u32]) -> Result<GluedSurface, TopologyError> {
    if dim != 3 {
        return Err(TopologyError::UnsupportedDimension(dim));
    }
    if let Some(j) = flips.iter().position(|&f| f == 0) {
        return Err(TopologyError::DegenerateGluing(j));
    }
    let d = flips.len();
    let faces = 1usize << dim;
    let local_edge = |j: usize| (j + d - 1) % d;
    debug_assert!((0..d).all(|j| sign_copy_facet(local_edge(j), d) == j));
    let mut pairings = Vec::new();
    for k in 0..faces {
        for (j, &s) in flips.iter().enumerate() {
            let other = k ^ s as usize;
            if k < other {
                pairings.push(EdgePairing { a: (k, local_edge(j)), b: (other, local_edge(j)), map: EdgeMap::Direct });
            }
        }
    }
    let mut surface = GluedSurface::from_gluing(vec![d; faces], pairings)?;
    surface.labels = (0..faces).map(|k| Some(SignVector::from_mask(k as u32, dim))).collect();

    let orbits = sign_orbits(dim, flips);
    let mut expected: Vec<Vec<(usize, usize)>> = orbits;
    let mut got = surface.vertex_orbits.clone();
    for o in expected.iter_mut().chain(got.iter_mut()) {
        o.sort_unstable();
    }
    expected.sort();
    got.sort();
    if expected != got {
        return Err(TopologyError::Inconsistent("vertex orbits disagree with edge identifications".into()));
    }
    surface.vertex_orbits = expected;

    let group_order = 1usize << f2_rank(flips);
    if surface.components != faces / group_order {
        return Err(TopologyError::Inconsistent(format!(
            "{} components but the flip subgroup has index {}",
            surface.components,
            faces / group_order
        )));
    }
    Ok(surface)
}

/// Orbits of `(kappa, vertex k)` under `<s_k, s_{k+1}>`.
fn sign_orbits(dim: usize, flips: &[u32]) -> Vec<Vec<(usize, usize)>> {
    let d = flips.len();
    let faces = 1usize << dim;
    let mut out = Vec::new();
    for k in 0..d {
        let gens = [flips[k], flips[(k + 1) % d]];
        let mut seen = vec![false; faces];
        for start in 0..faces {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![(start, k)];
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for g in gens {
                    let h = f ^ g as usize;
                    if !seen[h] {
                        seen[h] = true;
                        orbit.push((h, k));
                        queue.push_back(h);
                    }
                }
            }
            out.push(orbit);
        }
    }
    out
}

/// Surface glued from sign copies of the slice polygon of a 3-dimensional
/// cone.
pub fn build_glued_surface(slice: &SlicePolytope, cone: &PolyhedralCone) -> Result<GluedSurface, TopologyError> {
    if cone.dim() != 3 {
        return Err(TopologyError::UnsupportedDimension(cone.dim()));
    }
    if slice.edges.len() != cone.len() {
        return Err(TopologyError::EdgeCountMismatch { polygon: slice.edges.len(), conormals: cone.len() });
    }
    let flips: Vec<u32> = cone.conormals().iter().map(|l| l.parity_bits() as u32).collect();
    glue_sign_copies(3, &flips)
}

pub fn connected_components(surface: &GluedSurface) -> usize {
    surface.components
}

pub fn orientability(surface: &GluedSurface) -> bool {
    surface.is_orientable()
}

/// `(2 - chi) / 2` for a connected orientable surface.
pub fn genus(surface: &GluedSurface) -> Result<i64, TopologyError> {
    let chi = surface.euler_characteristic();
    if !surface.is_connected() || !surface.is_orientable() || chi % 2 != 0 {
        return Err(TopologyError::NotClosedOrientable {
            chi,
            components: surface.components,
            orientable: surface.is_orientable(),
        });
    }
    Ok((2 - chi) / 2)
}
