//! Embeddings of ideal lattices of width-two posets into `[m]_0 x [n]_0`,
//! corners and chain ladders.
//!
//! Convention: `m = |C|` counts the first chain and is the first coordinate.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{examples, is_isomorphic, Lattice};
use crate::poset::{all_two_chain_covers, canonical_two_chain_cover, Bounds, ChainCover, DownSet, Poset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "[usize; 2]")]
pub struct GridPoint {
    pub i: usize,
    pub j: usize,
}

impl GridPoint {
    pub fn new(i: usize, j: usize) -> GridPoint {
        GridPoint { i, j }
    }

    pub fn leq(self, other: GridPoint) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    pub fn comparable(self, other: GridPoint) -> bool {
        self.leq(other) || other.leq(self)
    }

    pub fn min(self, other: GridPoint) -> GridPoint {
        GridPoint::new(self.i.min(other.i), self.j.min(other.j))
    }

    pub fn max(self, other: GridPoint) -> GridPoint {
        GridPoint::new(self.i.max(other.i), self.j.max(other.j))
    }
}

impl From<GridPoint> for [usize; 2] {
    fn from(p: GridPoint) -> [usize; 2] {
        [p.i, p.j]
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A finite subset of `[m]_0 x [n]_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridImage {
    pub m: usize,
    pub n: usize,
    pub points: BTreeSet<GridPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CornerKind {
    Upper,
    Lower,
    Critical,
}

impl CornerKind {
    /// The kind after exchanging the two coordinates.
    pub fn transposed(self) -> CornerKind {
        match self {
            CornerKind::Upper => CornerKind::Lower,
            CornerKind::Lower => CornerKind::Upper,
            CornerKind::Critical => CornerKind::Critical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Corner {
    pub at: GridPoint,
    pub kind: CornerKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLadderCheck {
    pub holds: bool,
    pub witness: Option<(Corner, Corner)>,
}

impl GridImage {
    pub fn new(m: usize, n: usize, points: impl IntoIterator<Item = GridPoint>) -> GridImage {
        GridImage { m, n, points: points.into_iter().collect() }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.points.contains(&GridPoint::new(i, j))
    }

    // Membership for possibly negative coordinates.
    fn has(&self, i: isize, j: isize) -> bool {
        i >= 0 && j >= 0 && self.contains(i as usize, j as usize)
    }

    /// Closed under componentwise min and max, and containing an axis-step
    /// chain of length `m + n` from `(0,0)` to `(m,n)`.
    pub fn is_full_sublattice(&self) -> bool {
        let closed = self.points.iter().all(|&a| {
            self.points.iter().all(|&b| self.points.contains(&a.min(b)) && self.points.contains(&a.max(b)))
        });
        closed && self.has_saturated_chain()
    }

    fn has_saturated_chain(&self) -> bool {
        let start = GridPoint::new(0, 0);
        let end = GridPoint::new(self.m, self.n);
        if !self.points.contains(&start) || !self.points.contains(&end) {
            return false;
        }
        let mut reached = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(p) = stack.pop() {
            for q in [GridPoint::new(p.i + 1, p.j), GridPoint::new(p.i, p.j + 1)] {
                if self.points.contains(&q) && reached.insert(q) {
                    stack.push(q);
                }
            }
        }
        reached.contains(&end)
    }

    /// Points whose four axis neighbors are present, classified by the two
    /// diagonal points `(i-1,j+1)` and `(i+1,j-1)`.
    pub fn classify_corners(&self) -> Vec<Corner> {
        self.points
            .iter()
            .filter_map(|&p| {
                let (i, j) = (p.i as isize, p.j as isize);
                let axis = self.has(i - 1, j) && self.has(i + 1, j) && self.has(i, j - 1) && self.has(i, j + 1);
                if !axis {
                    return None;
                }
                let kind = match (self.has(i - 1, j + 1), self.has(i + 1, j - 1)) {
                    (false, true) => CornerKind::Upper,
                    (true, false) => CornerKind::Lower,
                    (false, false) => CornerKind::Critical,
                    (true, true) => return None,
                };
                Some(Corner { at: p, kind })
            })
            .collect()
    }

    /// Upper and lower corners pairwise comparable, and any two corners
    /// differ in both coordinates.
    pub fn is_chain_ladder(&self) -> ChainLadderCheck {
        let corners = self.classify_corners();
        for (k, &a) in corners.iter().enumerate() {
            for &b in &corners[k + 1..] {
                let both_sided = a.kind != CornerKind::Critical && b.kind != CornerKind::Critical;
                if (both_sided && !a.at.comparable(b.at)) || a.at.i == b.at.i || a.at.j == b.at.j {
                    return ChainLadderCheck { holds: false, witness: Some((a, b)) };
                }
            }
        }
        ChainLadderCheck { holds: true, witness: None }
    }

    pub fn transposed(&self) -> GridImage {
        GridImage::new(self.n, self.m, self.points.iter().map(|p| GridPoint::new(p.j, p.i)))
    }
}

#[derive(Debug, Clone)]
pub struct GridEmbedding {
    pub m: usize,
    pub n: usize,
    /// `image[k]` is the point of `down_sets[k]`.
    pub image: Vec<GridPoint>,
    pub down_sets: Vec<DownSet>,
    pub cover: ChainCover,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmbeddingReport {
    pub m: usize,
    pub n: usize,
    pub points: Vec<GridPoint>,
    pub corners: Vec<Corner>,
}

impl GridEmbedding {
    pub fn image_set(&self) -> GridImage {
        GridImage::new(self.m, self.n, self.image.iter().copied())
    }

    pub fn is_full_sublattice(&self) -> bool {
        self.image_set().is_full_sublattice()
    }

    pub fn classify_corners(&self) -> Vec<Corner> {
        self.image_set().classify_corners()
    }

    pub fn is_chain_ladder(&self) -> ChainLadderCheck {
        self.image_set().is_chain_ladder()
    }

    pub fn report(&self) -> EmbeddingReport {
        let image = self.image_set();
        EmbeddingReport {
            m: self.m,
            n: self.n,
            points: image.points.iter().copied().collect(),
            corners: image.classify_corners(),
        }
    }
}

/// `a -> (|a ∩ C|, |a ∩ D|)` on all downsets of `poset`, in downset
/// enumeration order. Fails if the map is not injective or does not send
/// intersections and unions to componentwise min and max.
pub fn grid_embedding(poset: &Poset, cover: &ChainCover) -> Result<GridEmbedding> {
    let down_sets = poset.enumerate_down_sets(&Bounds::default())?;
    embed(poset, cover, down_sets)
}

fn embed(poset: &Poset, cover: &ChainCover, down_sets: Vec<DownSet>) -> Result<GridEmbedding> {
    cover.validate(poset)?;
    let mask = |chain: &[usize]| chain.iter().fold(0u64, |m, &x| m | 1 << x);
    let (cm, dm) = (mask(&cover.chain_c), mask(&cover.chain_d));
    let prefix = |a: DownSet, chain: &[usize]| -> Result<usize> {
        let k = chain.iter().take_while(|&&x| a.contains(x)).count();
        if chain[k..].iter().any(|&x| a.contains(x)) {
            return Err(Error::NotACover(format!("downset {} meets a chain outside a prefix", a.to_bit_string(poset.len()))));
        }
        Ok(k)
    };
    let image = down_sets
        .iter()
        .map(|&a| {
            let p = GridPoint::new(prefix(a, &cover.chain_c)?, prefix(a, &cover.chain_d)?);
            debug_assert_eq!((p.i, p.j), ((a.bits() & cm).count_ones() as usize, (a.bits() & dm).count_ones() as usize));
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    let at: HashMap<DownSet, GridPoint> = down_sets.iter().copied().zip(image.iter().copied()).collect();
    if at.values().collect::<BTreeSet<_>>().len() != down_sets.len() {
        return Err(Error::Defect("grid map is not injective".into()));
    }
    for &a in &down_sets {
        for &b in &down_sets {
            let meet_ok = at.get(&a.intersection(b)) == Some(&at[&a].min(at[&b]));
            let join_ok = at.get(&a.union(b)) == Some(&at[&a].max(at[&b]));
            if !meet_ok || !join_ok {
                return Err(Error::Defect(format!(
                    "grid map does not preserve meet and join of {} and {}",
                    a.to_bit_string(poset.len()),
                    b.to_bit_string(poset.len())
                )));
            }
        }
    }
    Ok(GridEmbedding { m: cover.chain_c.len(), n: cover.chain_d.len(), image, down_sets, cover: cover.clone() })
}

/// Embeds a distributive lattice through its join-irreducibles and their
/// canonical cover; `image` is indexed by lattice id. `None` when the
/// join-irreducibles have width three or more.
pub fn lattice_grid_embedding(lattice: &Lattice) -> Result<Option<GridEmbedding>> {
    let poset = lattice.join_irreducibles();
    let Some(cover) = canonical_two_chain_cover(&poset) else { return Ok(None) };
    embed(&poset, &cover, lattice.birkhoff_sets()).map(Some)
}

/// Extents `(m, n)` with `m <= n` when `lattice` is isomorphic to a full grid.
pub fn is_grid_iso(lattice: &Lattice) -> Option<(usize, usize)> {
    let size = lattice.size();
    (0..size).filter(|&a| a * a <= size).find_map(|a| {
        let (m, n) = (a.checked_sub(1)?, (size / a).checked_sub(1)?);
        (size % a == 0 && is_isomorphic(lattice, &examples::grid(m, n))).then_some((m, n))
    })
}

/// Corner kinds seen under every two-chain cover, with upper and lower
/// identified across a swap of the chains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverSensitivity {
    pub consistent: bool,
    pub signatures: BTreeMap<String, Vec<CornerKind>>,
}

pub fn corner_cover_sensitivity(poset: &Poset) -> Result<CoverSensitivity> {
    let mut signatures = BTreeMap::new();
    for cover in all_two_chain_covers(poset) {
        let kinds = |e: &GridImage| {
            let mut k: Vec<CornerKind> = e.classify_corners().iter().map(|c| c.kind).collect();
            k.sort();
            k
        };
        let image = grid_embedding(poset, &cover)?.image_set();
        let sig = kinds(&image).min(kinds(&image.transposed()));
        signatures.insert(format!("{:?}|{:?}", cover.chain_c, cover.chain_d), sig);
    }
    let distinct: BTreeSet<&Vec<CornerKind>> = signatures.values().collect();
    Ok(CoverSensitivity { consistent: distinct.len() <= 1, signatures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Poset {
        Poset::build(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap()
    }

    fn grid_points(m: usize, n: usize, missing: &[(usize, usize)]) -> GridImage {
        let pts = (0..=m).flat_map(|i| (0..=n).map(move |j| GridPoint::new(i, j)));
        GridImage::new(m, n, pts.filter(|p| !missing.contains(&(p.i, p.j))))
    }

    #[test]
    fn bowtie_embedding() {
        let p = bowtie();
        let cover = ChainCover { chain_c: vec![0, 2], chain_d: vec![1, 3] };
        let e = grid_embedding(&p, &cover).unwrap();
        assert_eq!(e.image_set(), grid_points(2, 2, &[(0, 2), (2, 0)]));
        assert!(e.is_full_sublattice());
        assert_eq!(e.classify_corners(), vec![Corner { at: GridPoint::new(1, 1), kind: CornerKind::Critical }]);
        let json = serde_json::to_string(&e.report()).unwrap();
        assert!(json.contains(r#""corners":[{"at":[1,1],"kind":"critical"}]"#), "{json}");
    }

    #[test]
    fn disjoint_chains_fill_the_grid() {
        let p = Poset::build(&["c1", "c2", "d1"], &[("c1", "c2")]).unwrap();
        let cover = ChainCover { chain_c: vec![0, 1], chain_d: vec![2] };
        let e = grid_embedding(&p, &cover).unwrap();
        assert_eq!(e.image_set(), grid_points(2, 1, &[]));
    }

    #[test]
    fn chain_embeds_in_a_column() {
        let p = Poset::build(&["p1", "p2"], &[("p1", "p2")]).unwrap();
        let e = grid_embedding(&p, &ChainCover { chain_c: vec![0, 1], chain_d: vec![] }).unwrap();
        assert_eq!(e.image_set(), grid_points(2, 0, &[]));
        assert!(e.is_full_sublattice());
    }

    #[test]
    fn invalid_cover_is_rejected() {
        let bad = ChainCover { chain_c: vec![0, 1], chain_d: vec![2, 3] };
        assert!(matches!(grid_embedding(&bowtie(), &bad), Err(Error::NotACover(_))));
    }

    #[test]
    fn full_sublattice_examples() {
        assert!(!GridImage::new(1, 1, [GridPoint::new(0, 0), GridPoint::new(1, 1)]).is_full_sublattice());
        assert!(grid_points(2, 2, &[]).is_full_sublattice());
        assert!(!grid_points(1, 1, &[(1, 0), (0, 1)]).is_full_sublattice());
    }

    #[test]
    fn corner_examples() {
        assert!(grid_points(2, 2, &[]).classify_corners().is_empty());
        let one = grid_points(2, 2, &[(0, 2)]);
        assert_eq!(one.classify_corners(), vec![Corner { at: GridPoint::new(1, 1), kind: CornerKind::Upper }]);
        assert!(one.is_chain_ladder().holds);
        assert!(grid_points(2, 2, &[]).is_chain_ladder().holds);
    }

    #[test]
    fn incomparable_corners_break_the_ladder() {
        // Upper corner at (1,2), lower corner at (2,1).
        let image = grid_points(3, 3, &[(0, 3), (3, 0)]);
        let corners = image.classify_corners();
        assert_eq!(
            corners,
            vec![
                Corner { at: GridPoint::new(1, 2), kind: CornerKind::Upper },
                Corner { at: GridPoint::new(2, 1), kind: CornerKind::Lower },
            ]
        );
        let check = image.is_chain_ladder();
        assert!(!check.holds);
        assert_eq!(check.witness, Some((corners[0], corners[1])));
    }

    #[test]
    fn grid_isomorphism() {
        assert_eq!(is_grid_iso(&examples::diamond()), Some((1, 1)));
        assert_eq!(is_grid_iso(&examples::grid(2, 2)), Some((2, 2)));
        assert_eq!(is_grid_iso(&examples::grid(2, 1)), Some((1, 2)));
        assert_eq!(is_grid_iso(&examples::chain(3)), Some((0, 2)));
        let kept: Vec<usize> = (0..9).filter(|&x| x != 2 && x != 6).collect();
        assert_eq!(is_grid_iso(&examples::grid(2, 2).restrict(&kept).unwrap()), None);
        assert_eq!(is_grid_iso(&examples::m3()), None);
    }

    #[test]
    fn lattice_embedding_uses_lattice_ids() {
        let g = examples::grid(1, 2);
        let e = lattice_grid_embedding(&g).unwrap().unwrap();
        assert_eq!(e.image.len(), 6);
        assert!(e.is_full_sublattice());
        assert!(lattice_grid_embedding(&examples::grid(1, 1)).unwrap().is_some());
    }

    #[test]
    fn bowtie_corners_do_not_depend_on_the_cover() {
        let s = corner_cover_sensitivity(&bowtie()).unwrap();
        assert_eq!(s.signatures.len(), 4);
        assert!(s.consistent);
    }
}
