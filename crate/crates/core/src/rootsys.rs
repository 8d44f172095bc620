//! Simply-laced root systems and their Weyl groups.
//!
//! Dynkin node numbering (1-based in user-facing output, 0-based in code):
//!
//! * `A_r`: the path `1 - 2 - ... - r`.
//! * `D_r`: the path `1 - ... - (r-2)` with both `r-1` and `r` attached to `r-2`.
//! * `E_6, E_7, E_8`: Bourbaki, i.e. the path `1 - 3 - 4 - ... - r` with `2`
//!   attached to `4`.
//!
//! Roots and weights are written in simple-root coordinates throughout.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank (E8).
pub const MAX_RANK: usize = 8;

/// Default cap on the number of enumerated Weyl group elements.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::D => "D",
            Family::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(Error::UnsupportedType {
                family: other.to_string(),
                rank: 0,
            }),
        }
    }
}

/// A set of Dynkin nodes (equivalently, of simple reflections).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u16);

impl NodeSet {
    pub const fn empty() -> Self {
        NodeSet(0)
    }

    pub fn all(rank: usize) -> Self {
        NodeSet(((1u32 << rank) - 1) as u16)
    }

    pub fn singleton(i: usize) -> Self {
        NodeSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = NodeSet::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// A set of positive roots, by index into [`RootSystem::positive_roots`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RootSet(u128);

impl RootSet {
    pub fn contains(self, idx: usize) -> bool {
        self.0 >> idx & 1 == 1
    }

    pub fn insert(&mut self, idx: usize) {
        self.0 |= 1 << idx;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&i| self.contains(i))
    }
}

/// A simply-laced root datum.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    heights: Vec<i64>,
    inv_cartan: Vec<Vec<Rational64>>,
    root_index: FxHashMap<Vec<i64>, usize>,
}

fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize)>> {
    let unsupported = || Error::UnsupportedType {
        family: family.to_string(),
        rank,
    };
    match family {
        Family::A if (1..=MAX_RANK).contains(&rank) => {
            Ok((0..rank - 1).map(|i| (i, i + 1)).collect())
        }
        Family::D if (4..=MAX_RANK).contains(&rank) => {
            let mut edges: Vec<_> = (0..rank - 3).map(|i| (i, i + 1)).collect();
            edges.push((rank - 3, rank - 2));
            edges.push((rank - 3, rank - 1));
            Ok(edges)
        }
        Family::E if (6..=8).contains(&rank) => {
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..rank - 1).map(|i| (i, i + 1)));
            Ok(edges)
        }
        _ => Err(unsupported()),
    }
}

impl RootSystem {
    /// Builds the root system of type `family` and rank `rank`.
    ///
    /// Positive roots are generated from the simple roots by closure under
    /// simple reflections, then ordered by height and, within a height,
    /// lexicographically descending so that the first `rank` entries are
    /// `alpha_1, ..., alpha_r`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let edges = dynkin_edges(family, rank)?;
        let mut cartan = vec![vec![0i64; rank]; rank];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in &edges {
            cartan[i][j] = -1;
            cartan[j][i] = -1;
        }

        let mut roots: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: FxHashMap<Vec<i64>, ()> = roots.iter().map(|r| (r.clone(), ())).collect();
        let mut next = 0;
        while next < roots.len() {
            let beta = roots[next].clone();
            next += 1;
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                if image.iter().all(|&c| c >= 0) && !seen.contains_key(&image) {
                    seen.insert(image.clone(), ());
                    roots.push(image);
                }
            }
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let heights = roots.iter().map(|r| r.iter().sum()).collect();
        let root_index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let inv_cartan = invert_integer_matrix(&cartan);

        let rs = RootSystem {
            family,
            rank,
            cartan,
            positive_roots: roots,
            heights,
            inv_cartan,
            root_index,
        };
        rs.validate()?;
        Ok(rs)
    }

    fn validate(&self) -> Result<()> {
        let r = self.rank;
        let expected = match self.family {
            Family::A => r * (r + 1) / 2,
            Family::D => r * (r - 1),
            Family::E => match r {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        };
        if self.positive_roots.len() != expected {
            return Err(Error::Structural(format!(
                "{} has {} positive roots, expected {expected}",
                self.name(),
                self.positive_roots.len()
            )));
        }
        for i in 0..r {
            for j in 0..r {
                let c = self.cartan[i][j];
                let ok = if i == j {
                    c == 2
                } else {
                    c == self.cartan[j][i] && (c == 0 || c == -1)
                };
                if !ok {
                    return Err(Error::Structural("Cartan matrix is not simply-laced".into()));
                }
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Short name such as `A2` or `D4`.
    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn inverse_cartan(&self) -> &[Vec<Rational64>] {
        &self.inv_cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn heights(&self) -> &[i64] {
        &self.heights
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.root_index.get(root).copied()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] == -1
    }

    pub fn neighbors(&self, i: usize) -> NodeSet {
        (0..self.rank).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// `<v, alpha_i>` for `v` in root coordinates.
    pub fn coroot_pairing(&self, v: &[i64], i: usize) -> i64 {
        self.cartan[i].iter().zip(v).map(|(c, x)| c * x).sum()
    }

    /// The invariant form on root coordinates, `a^T C b`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        (0..self.rank).map(|i| a[i] * self.coroot_pairing(b, i)).sum()
    }

    /// Simple reflection `sigma_i` applied to an integer vector.
    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        out[i] -= self.coroot_pairing(v, i);
        out
    }

    /// `|W|` from the closed-form orders.
    pub fn weyl_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match self.family {
            Family::A => fact(self.rank + 1),
            Family::D => (1u128 << (self.rank - 1)) * fact(self.rank),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
        }
    }

    /// Half the sum of the positive roots; its fundamental-weight coordinates are all 1.
    pub fn rho(&self) -> Weight {
        Weight::from_fundamental(self, &vec![Rational64::one(); self.rank])
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut c = vec![Rational64::zero(); self.rank];
        c[i] = Rational64::one();
        Weight::from_fundamental(self, &c)
    }

    pub fn descriptor(&self) -> RootSystemDescriptor {
        RootSystemDescriptor {
            schema: "qwmds/root-system/v1".into(),
            family: self.family,
            rank: self.rank,
            numbering: NUMBERING_NOTE.into(),
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            heights: self.heights.clone(),
        }
    }

    /// Rebuilds a root system from a descriptor, rejecting descriptors that
    /// disagree with the canonical construction.
    pub fn from_descriptor(desc: &RootSystemDescriptor) -> Result<Self> {
        let rs = RootSystem::new(desc.family, desc.rank)?;
        if rs.cartan != desc.cartan || rs.positive_roots != desc.positive_roots {
            return Err(Error::Parse(format!(
                "descriptor does not match the canonical {}",
                rs.name()
            )));
        }
        Ok(rs)
    }
}

const NUMBERING_NOTE: &str = "A_r: path 1-2-...-r; D_r: path 1-...-(r-2) with r-1 and r attached to r-2; \
E_r: Bourbaki (path 1-3-4-...-r, node 2 attached to 4). Roots are in simple-root coordinates.";

/// JSON descriptor of a root system, used for fixtures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RootSystemDescriptor {
    pub schema: String,
    pub family: Family,
    pub rank: usize,
    pub numbering: String,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub heights: Vec<i64>,
}

fn invert_integer_matrix(m: &[Vec<i64>]) -> Vec<Vec<Rational64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrices are invertible");
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= factor * p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// A weight, stored by its simple-root coordinates (rational in general).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coords: Vec<Rational64>,
}

impl Weight {
    pub fn new(coords: Vec<Rational64>) -> Self {
        Weight { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![Rational64::zero(); rank],
        }
    }

    pub fn from_integer(coords: &[i64]) -> Self {
        Weight {
            coords: coords.iter().map(|&c| Rational64::from_integer(c)).collect(),
        }
    }

    /// Weight with the given fundamental-weight coordinates.
    pub fn from_fundamental(rs: &RootSystem, fund: &[Rational64]) -> Self {
        let inv = rs.inverse_cartan();
        let coords = (0..rs.rank())
            .map(|i| (0..rs.rank()).map(|j| inv[i][j] * fund[j]).sum())
            .collect();
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Simple-root coordinates; coordinate `i` equals `<varpi_i, self>`.
    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn to_integer(&self) -> Option<Vec<i64>> {
        self.is_integral()
            .then(|| self.coords.iter().map(|c| c.to_integer()).collect())
    }

    /// Fundamental-weight coordinates, `<self, alpha_i>`.
    pub fn fundamental_coords(&self, rs: &RootSystem) -> Vec<Rational64> {
        (0..rs.rank())
            .map(|i| {
                rs.cartan()[i]
                    .iter()
                    .zip(&self.coords)
                    .map(|(&c, x)| x * c)
                    .sum()
            })
            .collect()
    }

    pub fn is_dominant(&self, rs: &RootSystem) -> bool {
        self.fundamental_coords(rs).iter().all(|c| !c.is_negative())
    }

    pub fn is_regular_dominant(&self, rs: &RootSystem) -> bool {
        self.fundamental_coords(rs).iter().all(|c| c.is_positive())
    }

    /// Simple reflections fixing this weight.
    pub fn stabilizer(&self, rs: &RootSystem) -> NodeSet {
        self.fundamental_coords(rs)
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn height(&self) -> Rational64 {
        self.coords.iter().sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self >= other` in the dominance order (difference a nonnegative sum of simple roots).
    pub fn dominates(&self, other: &Weight) -> bool {
        self.sub(other)
            .coords
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// Simple reflection of a weight.
pub fn sigma_on_weight(rs: &RootSystem, i: usize, w: &Weight) -> Weight {
    let pairing = w.fundamental_coords(rs)[i];
    let mut coords = w.coords.clone();
    coords[i] -= pairing;
    Weight { coords }
}

/// `theta = rho + sum_k l_k varpi_k`, a regular dominant weight.
pub fn theta_of_twist(rs: &RootSystem, ell: &[u32]) -> Result<Weight> {
    if ell.len() != rs.rank() {
        return Err(Error::TwistLength {
            got: ell.len(),
            expected: rs.rank(),
        });
    }
    let fund: Vec<Rational64> = ell
        .iter()
        .map(|&l| Rational64::from_integer(l as i64 + 1))
        .collect();
    Ok(Weight::from_fundamental(rs, &fund))
}

/// `d_theta(lambda) = <theta, lambda>`.
pub fn pairing_d_theta(rs: &RootSystem, theta: &Weight, lambda: &Weight) -> Rational64 {
    theta
        .fundamental_coords(rs)
        .iter()
        .zip(lambda.coords())
        .map(|(a, b)| a * b)
        .sum()
}

/// The unique dominant weight in the W-orbit of `w`.
pub fn dominant_representative(rs: &RootSystem, w: &Weight) -> Weight {
    let mut cur = w.clone();
    loop {
        let fund = cur.fundamental_coords(rs);
        match fund.iter().position(|c| c.is_negative()) {
            Some(i) => cur = sigma_on_weight(rs, i, &cur),
            None => return cur,
        }
    }
}

/// Element of a Weyl group with its combinatorial data.
#[derive(Clone, Debug)]
pub struct WeylElt {
    word: Vec<u8>,
    matrix: Vec<i64>,
    length: usize,
    inversions: RootSet,
    left_descents: NodeSet,
    right_descents: NodeSet,
}

impl WeylElt {
    /// Lexicographically smallest reduced word (0-based node indices).
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Row-major action on simple-root coordinates.
    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.word_rank()
    }

    fn word_rank(&self) -> usize {
        (self.matrix.len() as f64).sqrt() as usize
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn sign(&self) -> i64 {
        if self.length.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Positive roots sent to negative roots.
    pub fn inversions(&self) -> RootSet {
        self.inversions
    }

    pub fn left_descents(&self) -> NodeSet {
        self.left_descents
    }

    pub fn right_descents(&self) -> NodeSet {
        self.right_descents
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let r = v.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.matrix[i * r + j] * v[j]).sum())
            .collect()
    }

    pub fn apply_weight(&self, w: &Weight) -> Weight {
        let r = w.rank();
        let coords = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| w.coords[j] * self.matrix[i * r + j])
                    .sum()
            })
            .collect();
        Weight { coords }
    }

    /// Word in 1-based node labels, e.g. `"121"`; the identity is `"id"`.
    pub fn label(&self) -> String {
        if self.word.is_empty() {
            "id".into()
        } else {
            self.word
                .iter()
                .map(|&i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(if self.word.len() > 9 { "," } else { "" })
        }
    }
}

/// A fully enumerated Weyl group with multiplication tables.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElt>,
    index: FxHashMap<Vec<i64>, u32>,
    right_mul: Vec<[u32; MAX_RANK]>,
    left_mul: Vec<[u32; MAX_RANK]>,
    inverse: Vec<u32>,
    parent: Vec<Option<(u32, u8)>>,
}

/// Enumerates `W` with the default cap.
pub fn enumerate_weyl(rs: &RootSystem) -> Result<WeylGroup> {
    enumerate_weyl_capped(rs, DEFAULT_GROUP_CAP)
}

/// Enumerates `W` by breadth-first search over right multiplication by simple
/// reflections, deduplicating on the action matrix.
///
/// Elements come out ordered by length and then by reduced word; each word
/// is the lexicographically smallest reduced word of its element.
pub fn enumerate_weyl_capped(rs: &RootSystem, cap: usize) -> Result<WeylGroup> {
    let order = rs.weyl_order();
    if order > cap as u128 {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let r = rs.rank();
    let cartan = rs.cartan();

    let mut identity = vec![0i64; r * r];
    for i in 0..r {
        identity[i * r + i] = 1;
    }
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut matrices: Vec<Vec<i64>> = vec![identity.clone()];
    let mut index: FxHashMap<Vec<i64>, u32> = FxHashMap::default();
    index.insert(identity, 0);
    let mut parent: Vec<Option<(u32, u8)>> = vec![None];
    let mut right_mul: Vec<[u32; MAX_RANK]> = Vec::with_capacity(order as usize);

    let mut cursor = 0usize;
    while cursor < matrices.len() {
        let m = matrices[cursor].clone();
        let mut row = [u32::MAX; MAX_RANK];
        for (i, slot) in row.iter_mut().enumerate().take(r) {
            // S_i = I - e_i C[i, :], so M S_i = M - M[:, i] C[i, :].
            let mut next = m.clone();
            for a in 0..r {
                let mi = m[a * r + i];
                if mi != 0 {
                    for b in 0..r {
                        next[a * r + b] -= mi * cartan[i][b];
                    }
                }
            }
            let idx = match index.get(&next) {
                Some(&idx) => idx,
                None => {
                    let idx = matrices.len() as u32;
                    let mut word = words[cursor].clone();
                    word.push(i as u8);
                    words.push(word);
                    index.insert(next.clone(), idx);
                    matrices.push(next);
                    parent.push(Some((cursor as u32, i as u8)));
                    idx
                }
            };
            *slot = idx;
        }
        right_mul.push(row);
        cursor += 1;
    }
    debug_assert_eq!(matrices.len() as u128, order);

    let mut left_mul = vec![[u32::MAX; MAX_RANK]; matrices.len()];
    for (w, m) in matrices.iter().enumerate() {
        for i in 0..r {
            let mut next = m.clone();
            for b in 0..r {
                let delta: i64 = (0..r).map(|j| cartan[i][j] * m[j * r + b]).sum();
                next[i * r + b] -= delta;
            }
            left_mul[w][i] = index[&next];
        }
    }

    let mut inverse = vec![0u32; matrices.len()];
    for w in 1..matrices.len() {
        let (p, i) = parent[w].expect("non-identity elements have a parent");
        inverse[w] = left_mul[inverse[p as usize] as usize][i as usize];
    }

    let roots = rs.positive_roots();
    let elements: Vec<WeylElt> = words
        .into_iter()
        .zip(matrices)
        .map(|(word, matrix)| {
            let mut inversions = RootSet::default();
            for (k, root) in roots.iter().enumerate() {
                let image_height: i64 = (0..r)
                    .map(|a| (0..r).map(|b| matrix[a * r + b] * root[b]).sum::<i64>())
                    .sum();
                if image_height < 0 {
                    inversions.insert(k);
                }
            }
            let right_descents = (0..r).filter(|&i| inversions.contains(i)).collect();
            WeylElt {
                length: word.len(),
                word,
                matrix,
                inversions,
                left_descents: NodeSet::empty(),
                right_descents,
            }
        })
        .collect();

    let mut group = WeylGroup {
        rs: rs.clone(),
        elements,
        index,
        right_mul,
        left_mul,
        inverse,
        parent,
    };
    for w in 0..group.elements.len() {
        let len = group.elements[w].length;
        group.elements[w].left_descents = (0..r)
            .filter(|&i| group.elements[group.left_mul[w][i] as usize].length < len)
            .collect();
    }
    Ok(group)
}

impl WeylGroup {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElt] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElt {
        &self.elements[idx]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the longest element.
    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    /// Index of `w * sigma_i`.
    pub fn right_mul(&self, w: usize, i: usize) -> usize {
        self.right_mul[w][i] as usize
    }

    /// Index of `sigma_i * w`.
    pub fn left_mul(&self, w: usize, i: usize) -> usize {
        self.left_mul[w][i] as usize
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w] as usize
    }

    /// `(u, i)` with `w = u * sigma_i` and `u` the reduced-word prefix.
    pub fn parent(&self, w: usize) -> Option<(usize, usize)> {
        self.parent[w].map(|(p, i)| (p as usize, i as usize))
    }

    pub fn index_of_matrix(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    /// Element with the given word (not necessarily reduced).
    pub fn from_word(&self, word: &[u8]) -> usize {
        word.iter()
            .fold(0, |w, &i| self.right_mul(w, i as usize))
    }

    /// Product `a * b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .word
            .iter()
            .fold(a, |w, &i| self.right_mul(w, i as usize))
    }

    /// Ranges of element indices grouped by length.
    pub fn levels(&self) -> Vec<std::ops::Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for idx in 1..=self.elements.len() {
            if idx == self.elements.len() || self.elements[idx].length != self.elements[start].length {
                out.push(start..idx);
                start = idx;
            }
        }
        out
    }

    /// The unique element of maximal length in the coset `w P`, where `P` is
    /// the standard parabolic subgroup generated by `parabolic`.
    pub fn coset_max(&self, w: usize, parabolic: NodeSet) -> usize {
        let mut cur = w;
        'climb: loop {
            for i in parabolic.iter() {
                let next = self.right_mul(cur, i);
                if self.elements[next].length > self.elements[cur].length {
                    cur = next;
                    continue 'climb;
                }
            }
            return cur;
        }
    }

    /// Elements of the standard parabolic subgroup generated by `parabolic`.
    pub fn parabolic_subgroup(&self, parabolic: NodeSet) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![0];
        seen[0] = true;
        let mut cursor = 0;
        while cursor < out.len() {
            let w = out[cursor];
            cursor += 1;
            for i in parabolic.iter() {
                let n = self.right_mul(w, i);
                if !seen[n] {
                    seen[n] = true;
                    out.push(n);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Action of `w` on a weight.
    pub fn reflect(&self, w: usize, lambda: &Weight) -> Weight {
        self.elements[w].apply_weight(lambda)
    }

    /// The orbit `{theta - w xi : w in W}` as distinct integer points
    /// (requires `theta - xi` in the root lattice).
    pub fn orbit(&self, theta: &Weight, xi: &Weight) -> Vec<Vec<i64>> {
        let mut pts: Vec<Vec<i64>> = self
            .elements
            .iter()
            .map(|w| {
                theta
                    .sub(&w.apply_weight(xi))
                    .to_integer()
                    .expect("theta - w xi lies in the root lattice")
            })
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }
}

/// The dominant weights `xi <= theta` congruent to `theta` modulo the root
/// lattice, ordered by decreasing height (so `theta` comes first).
#[derive(Clone, Debug)]
pub struct DominantPoset {
    weights: Vec<Weight>,
    stabilizers: Vec<NodeSet>,
}

impl DominantPoset {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn stabilizer(&self, i: usize) -> NodeSet {
        self.stabilizers[i]
    }

    /// `weights[i] <= weights[j]`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.weights[j].dominates(&self.weights[i])
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.weights.contains(w)
    }

    pub fn regular_count(&self) -> usize {
        self.stabilizers.iter().filter(|s| s.is_empty()).count()
    }
}

pub fn dominant_weights_below(rs: &RootSystem, theta: &Weight) -> DominantPoset {
    // Dominant weights are nonnegative in root coordinates, so the
    // subtracted vector is bounded by floor(theta).
    let bounds: Vec<i64> = theta.coords().iter().map(|c| c.floor().to_integer()).collect();
    let r = rs.rank();
    let mut found = Vec::new();
    let mut n = vec![0i64; r];
    loop {
        let xi = theta.sub(&Weight::from_integer(&n));
        if xi.is_dominant(rs) {
            found.push(xi);
        }
        let mut k = 0;
        loop {
            if k == r {
                found.sort_by(|a: &Weight, b: &Weight| {
                    b.height().cmp(&a.height()).then_with(|| b.cmp(a))
                });
                let stabilizers = found.iter().map(|w| w.stabilizer(rs)).collect();
                return DominantPoset {
                    weights: found,
                    stabilizers,
                };
            }
            n[k] += 1;
            if n[k] <= bounds[k] {
                break;
            }
            n[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn rank_one() {
        let rs = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1]]);
        assert_eq!(rs.cartan(), &[vec![2]]);
    }

    #[test]
    fn a2_roots_and_heights() {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.heights(), &[1, 1, 2]);
    }

    #[test]
    fn root_counts() {
        let cases = [
            (Family::A, 3, 6),
            (Family::A, 5, 15),
            (Family::D, 4, 12),
            (Family::D, 5, 20),
            (Family::E, 6, 36),
            (Family::E, 7, 63),
            (Family::E, 8, 120),
        ];
        for (f, rank, count) in cases {
            let rs = RootSystem::new(f, rank).unwrap();
            assert_eq!(rs.positive_roots().len(), count, "{}", rs.name());
            for (root, h) in rs.positive_roots().iter().zip(rs.heights()) {
                assert_eq!(root.iter().sum::<i64>(), *h);
                assert_eq!(rs.form(root, root), 2);
            }
        }
        // E8 highest root
        let e8 = RootSystem::new(Family::E, 8).unwrap();
        assert_eq!(e8.positive_roots().last().unwrap(), &vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn unsupported_requests() {
        assert!(matches!(
            RootSystem::new(Family::D, 3),
            Err(Error::UnsupportedType { .. })
        ));
        assert!(matches!(
            RootSystem::new(Family::E, 5),
            Err(Error::UnsupportedType { .. })
        ));
        assert!(matches!("B".parse::<Family>(), Err(Error::UnsupportedType { .. })));
        assert!(matches!("G".parse::<Family>(), Err(Error::UnsupportedType { .. })));
    }

    #[test]
    fn small_weyl_groups() {
        let a1 = enumerate_weyl(&RootSystem::new(Family::A, 1).unwrap()).unwrap();
        assert_eq!(a1.len(), 2);
        assert_eq!(
            a1.elements().iter().map(|w| w.length()).collect::<Vec<_>>(),
            vec![0, 1]
        );

        let a2 = enumerate_weyl(&RootSystem::new(Family::A, 2).unwrap()).unwrap();
        let labels: Vec<String> = a2.elements().iter().map(|w| w.label()).collect();
        assert_eq!(labels, vec!["id", "1", "2", "12", "21", "121"]);
        assert_eq!(a2.element(a2.longest()).length(), 3);

        let d4 = enumerate_weyl(&RootSystem::new(Family::D, 4).unwrap()).unwrap();
        assert_eq!(d4.len(), 192);
        assert_eq!(d4.element(d4.longest()).length(), 12);
    }

    #[test]
    fn group_cap() {
        let rs = RootSystem::new(Family::E, 7).unwrap();
        assert!(matches!(
            enumerate_weyl(&rs),
            Err(Error::GroupTooLarge { order: 2_903_040, .. })
        ));
        let a3 = RootSystem::new(Family::A, 3).unwrap();
        assert!(enumerate_weyl_capped(&a3, 10).is_err());
    }

    #[test]
    fn e6_enumerates() {
        let g = enumerate_weyl(&RootSystem::new(Family::E, 6).unwrap()).unwrap();
        assert_eq!(g.len(), 51_840);
        assert_eq!(g.element(g.longest()).length(), 36);
    }

    #[test]
    fn coset_max_examples() {
        let g = enumerate_weyl(&RootSystem::new(Family::A, 2).unwrap()).unwrap();
        let s1 = g.from_word(&[0]);
        let s2 = g.from_word(&[1]);
        let s2s1 = g.from_word(&[1, 0]);
        assert_eq!(g.coset_max(0, NodeSet::singleton(0)), s1);
        assert_eq!(g.coset_max(s2, NodeSet::singleton(0)), s2s1);
        for w in 0..g.len() {
            assert_eq!(g.coset_max(w, NodeSet::empty()), w);
        }
    }

    #[test]
    fn theta_examples() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let rho = theta_of_twist(&a2, &[0, 0]).unwrap();
        assert_eq!(rho, Weight::from_integer(&[1, 1]));
        assert_eq!(rho, a2.rho());
        let t22 = theta_of_twist(&a2, &[2, 2]).unwrap();
        assert_eq!(t22, Weight::from_integer(&[3, 3]));
        assert_eq!(t22.fundamental_coords(&a2), vec![r(3, 1), r(3, 1)]);
        let t10 = theta_of_twist(&a2, &[1, 0]).unwrap();
        assert_eq!(t10.coords(), &[r(5, 3), r(4, 3)]);
        assert!(!t10.is_integral());

        let a1 = RootSystem::new(Family::A, 1).unwrap();
        let t = theta_of_twist(&a1, &[1]).unwrap();
        assert_eq!(t.fundamental_coords(&a1), vec![r(2, 1)]);
        assert_eq!(t, Weight::from_integer(&[1]));
        assert!(theta_of_twist(&a1, &[1, 2]).is_err());
    }

    #[test]
    fn d_theta_pairing() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let rho = a2.rho();
        assert_eq!(pairing_d_theta(&a2, &rho, &Weight::from_integer(&[1, 0])), r(1, 1));
        let t10 = theta_of_twist(&a2, &[1, 0]).unwrap();
        assert_eq!(pairing_d_theta(&a2, &t10, &Weight::from_integer(&[1, 1])), r(3, 1));
        assert_eq!(pairing_d_theta(&a2, &t10, &Weight::zero(2)), r(0, 1));
    }

    #[test]
    fn dominant_weight_posets() {
        let a2 = RootSystem::new(Family::A, 2).unwrap();
        let p = dominant_weights_below(&a2, &a2.rho());
        assert_eq!(p.weights(), &[a2.rho(), Weight::zero(2)]);
        assert_eq!(p.stabilizer(1), NodeSet::all(2));
        assert!(p.stabilizer(0).is_empty());

        let a1 = RootSystem::new(Family::A, 1).unwrap();
        assert_eq!(dominant_weights_below(&a1, &a1.rho()).len(), 1);

        // theta = 2 varpi_1 + varpi_2: dominant weights (2,1), (0,2), (1,0).
        let t10 = theta_of_twist(&a2, &[1, 0]).unwrap();
        let p = dominant_weights_below(&a2, &t10);
        let two_varpi2 = Weight::from_fundamental(&a2, &[r(0, 1), r(2, 1)]);
        assert_eq!(p.len(), 3);
        assert_eq!(p.weight(0), &t10);
        assert!(p.contains(&two_varpi2));
        assert!(p.contains(&a2.fundamental_weight(0)));
        assert!(!p.contains(&a2.fundamental_weight(1)));
        assert!(p.le(2, 0) && p.le(1, 0));
    }
}
