//! Tournaments on labeled vertices 1..n, the E-bar-Q construction,
//! transitivity and winner permutations, and the dominant-set families
//! with their cardinality bounds.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("edge ({0}, {1}) is out of range or a self-loop")]
    BadEdge(usize, usize),
    #[error("orientation missing or duplicated for pair {{{0}, {1}}}")]
    BadOrientation(usize, usize),
    #[error("tournament is nontransitive; no winner permutation exists")]
    Nontransitive,
    #[error("pair ({0}, {1}) is outside the ground set")]
    OutsideGroundSet(usize, usize),
}

/// Orientation of the complete graph on vertices 1..n. Edge (i, j) means
/// "i beats j".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tournament {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Tournament {
    pub fn new(n: usize, edges: BTreeSet<(usize, usize)>) -> Result<Self, TournamentError> {
        for &(i, j) in &edges {
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(TournamentError::BadEdge(i, j));
            }
        }
        for i in 1..=n {
            for j in (i + 1)..=n {
                let fwd = edges.contains(&(i, j));
                let bwd = edges.contains(&(j, i));
                if fwd == bwd {
                    return Err(TournamentError::BadOrientation(i, j));
                }
            }
        }
        Ok(Tournament { n, edges })
    }

    /// Orientation picked by a bitmask over the pairs (i,j), i<j, in
    /// lexicographic order; bit set means the pair is reversed.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut edges = BTreeSet::new();
        let mut bit = 0;
        for i in 1..=n {
            for j in (i + 1)..=n {
                if mask >> bit & 1 == 1 {
                    edges.insert((j, i));
                } else {
                    edges.insert((i, j));
                }
                bit += 1;
            }
        }
        Tournament { n, edges }
    }

    /// All 2^C(n,2) tournaments on n vertices.
    pub fn enumerate_all(n: usize) -> impl Iterator<Item = Tournament> {
        let npairs = n * n.saturating_sub(1) / 2;
        (0u64..1 << npairs).map(move |mask| Tournament::from_mask(n, mask))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn beats(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    /// True iff no directed 3-cycle exists.
    pub fn is_transitive(&self) -> bool {
        for i in 1..=self.n {
            for j in 1..=self.n {
                for k in 1..=self.n {
                    if i != j
                        && j != k
                        && i != k
                        && self.beats(i, j)
                        && self.beats(j, k)
                        && self.beats(k, i)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn out_degree(&self, v: usize) -> usize {
        (1..=self.n).filter(|&m| self.beats(v, m)).count()
    }

    /// The unique sigma with sigma(1) -> sigma(2) -> ... -> sigma(n),
    /// obtained by sorting vertices by decreasing out-degree.
    pub fn winner_permutation(&self) -> Result<Vec<usize>, TournamentError> {
        if !self.is_transitive() {
            return Err(TournamentError::Nontransitive);
        }
        let mut order: Vec<usize> = (1..=self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.out_degree(v)));
        Ok(order)
    }

    /// All nonempty vertex subsets R whose every member beats every
    /// non-member, by brute-force subset enumeration.
    pub fn dominant_sets(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut out = Vec::new();
        for mask in 1u64..1 << n {
            let members: Vec<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
            let dominant = members.iter().all(|&r| {
                (1..=n)
                    .filter(|&m| mask >> (m - 1) & 1 == 0)
                    .all(|m| self.beats(r, m))
            });
            if dominant {
                out.push(members);
            }
        }
        out
    }
}

/// Which ground set a Q-subset is drawn from: pairs (i,j) with i < j and
/// i at least 1, 2, or 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroundSet {
    E,
    Q1,
    Q2,
}

impl GroundSet {
    pub fn min_index(self) -> usize {
        match self {
            GroundSet::E => 1,
            GroundSet::Q1 => 2,
            GroundSet::Q2 => 3,
        }
    }

    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        let lo = self.min_index();
        let mut out = Vec::new();
        for i in lo..=n {
            for j in (i + 1)..=n {
                out.push((i, j));
            }
        }
        out
    }
}

/// A subset of a ground set of pairs, used to flip edges of the natural
/// order E.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QSet {
    n: usize,
    ground: GroundSet,
    pairs: BTreeSet<(usize, usize)>,
}

impl QSet {
    pub fn new(
        n: usize,
        ground: GroundSet,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, TournamentError> {
        let lo = ground.min_index();
        let pairs: BTreeSet<(usize, usize)> = pairs.into_iter().collect();
        for &(i, j) in &pairs {
            if !(lo <= i && i < j && j <= n) {
                return Err(TournamentError::OutsideGroundSet(i, j));
            }
        }
        Ok(QSet { n, ground, pairs })
    }

    pub fn empty(n: usize, ground: GroundSet) -> Self {
        QSet {
            n,
            ground,
            pairs: BTreeSet::new(),
        }
    }

    /// All subsets of the ground set, in lexicographic order by pair list.
    pub fn all_subsets(n: usize, ground: GroundSet) -> Vec<QSet> {
        let pairs = ground.pairs(n);
        let mut out = Vec::new();
        for mask in 0u64..1 << pairs.len() {
            let chosen: BTreeSet<_> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            out.push(QSet {
                n,
                ground,
                pairs: chosen,
            });
        }
        out.sort_by(|a, b| a.pairs.cmp(&b.pairs));
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The tournament E-bar-Q: edge (i,j) for each i < j unless (i,j) is
    /// in Q, in which case (j,i).
    pub fn e_bar(&self) -> Tournament {
        let mut edges = BTreeSet::new();
        for i in 1..=self.n {
            for j in (i + 1)..=self.n {
                if self.pairs.contains(&(i, j)) {
                    edges.insert((j, i));
                } else {
                    edges.insert((i, j));
                }
            }
        }
        Tournament { n: self.n, edges }
    }
}

/// R_1: dominant sets of E-bar-Q1 plus every singleton {r}, r != 1, where
/// r beats every vertex except its single loss to 1.
pub fn r1_family(q1: &QSet) -> Vec<Vec<usize>> {
    let t = q1.e_bar();
    let n = t.n();
    let mut family: BTreeSet<Vec<usize>> = t.dominant_sets().into_iter().collect();
    for r in 2..=n {
        let loses_only_to_1 = t.beats(1, r)
            && (1..=n)
                .filter(|&m| m != r && m != 1)
                .all(|m| t.beats(r, m));
        if loses_only_to_1 {
            family.insert(vec![r]);
        }
    }
    family.into_iter().collect()
}

/// The literal second-family predicate of R_2: R nonempty with |R| <= 2,
/// 2 not in R, and the violations of "every member beats every
/// non-member" are exactly one member's loss to vertex 2.
fn r2_second_family_literal(t: &Tournament) -> BTreeSet<Vec<usize>> {
    let n = t.n();
    let mut out = BTreeSet::new();
    for mask in 1u64..1 << n {
        let members: Vec<usize> = (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
        if members.len() > 2 || members.contains(&2) {
            continue;
        }
        let violations: Vec<(usize, usize)> = members
            .iter()
            .flat_map(|&r| {
                (1..=n)
                    .filter(move |&m| mask >> (m - 1) & 1 == 0 && t.beats(m, r))
                    .map(move |m| (r, m))
            })
            .collect();
        if violations.len() == 1 && violations[0].1 == 2 {
            out.insert(members);
        }
    }
    out
}

/// The proof-text characterization of the same family: {1, r} where r
/// beats every vertex except 1 and 2.
fn r2_second_family_characterization(t: &Tournament) -> BTreeSet<Vec<usize>> {
    let n = t.n();
    let mut out = BTreeSet::new();
    for r in 3..=n {
        let fits = t.beats(1, r)
            && t.beats(2, r)
            && (1..=n)
                .filter(|&m| m != r && m != 1 && m != 2)
                .all(|m| t.beats(r, m))
            && (1..=n).filter(|&m| m != 1).all(|m| t.beats(1, m));
        if fits {
            out.insert(vec![1, r]);
        }
    }
    out
}

/// R_2: dominant sets of E-bar-Q2 plus the literal second family. The two
/// readings of the second family must agree; a disagreement is surfaced
/// as an error rather than resolved silently.
pub fn r2_family(q2: &QSet) -> Result<Vec<Vec<usize>>, String> {
    let t = q2.e_bar();
    let literal = r2_second_family_literal(&t);
    let characterized = r2_second_family_characterization(&t);
    if literal != characterized {
        return Err(format!(
            "R_2 second-family readings disagree for Q2={:?}: literal {:?} vs characterization {:?}",
            q2.pairs(),
            literal,
            characterized
        ));
    }
    let mut family: BTreeSet<Vec<usize>> = t.dominant_sets().into_iter().collect();
    family.extend(literal);
    Ok(family.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize, ground: GroundSet, pairs: &[(usize, usize)]) -> QSet {
        QSet::new(n, ground, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn e_bar_construction() {
        let t = q(3, GroundSet::E, &[]).e_bar();
        assert_eq!(
            t.edges(),
            &BTreeSet::from([(1, 2), (1, 3), (2, 3)])
        );
        let t = q(3, GroundSet::E, &[(1, 3)]).e_bar();
        assert_eq!(
            t.edges(),
            &BTreeSet::from([(1, 2), (3, 1), (2, 3)])
        );
        let t = q(3, GroundSet::E, &[(1, 2)]).e_bar();
        assert_eq!(
            t.edges(),
            &BTreeSet::from([(2, 1), (1, 3), (2, 3)])
        );
    }

    #[test]
    fn transitivity_cases() {
        assert!(q(3, GroundSet::E, &[]).e_bar().is_transitive());
        assert!(!q(3, GroundSet::E, &[(1, 3)]).e_bar().is_transitive());
        for t in Tournament::enumerate_all(2) {
            assert!(t.is_transitive());
        }
    }

    #[test]
    fn winner_permutations() {
        assert_eq!(
            q(3, GroundSet::E, &[]).e_bar().winner_permutation().unwrap(),
            vec![1, 2, 3]
        );
        assert_eq!(
            q(3, GroundSet::E, &[(1, 2)])
                .e_bar()
                .winner_permutation()
                .unwrap(),
            vec![2, 1, 3]
        );
        assert_eq!(
            q(3, GroundSet::E, &[(1, 2), (1, 3), (2, 3)])
                .e_bar()
                .winner_permutation()
                .unwrap(),
            vec![3, 2, 1]
        );
        assert!(matches!(
            q(3, GroundSet::E, &[(1, 3)]).e_bar().winner_permutation(),
            Err(TournamentError::Nontransitive)
        ));
    }

    #[test]
    fn winner_permutation_orders_all_pairs() {
        for t in Tournament::enumerate_all(4).filter(Tournament::is_transitive) {
            let sigma = t.winner_permutation().unwrap();
            for i in 0..sigma.len() {
                for j in (i + 1)..sigma.len() {
                    assert!(t.beats(sigma[i], sigma[j]));
                }
            }
        }
    }

    #[test]
    fn dominant_sets_cases() {
        let e3 = q(3, GroundSet::E, &[]).e_bar();
        assert_eq!(
            e3.dominant_sets(),
            vec![vec![1], vec![1, 2], vec![1, 2, 3]]
        );
        let cycle = q(3, GroundSet::E, &[(1, 3)]).e_bar();
        assert_eq!(cycle.dominant_sets(), vec![vec![1, 2, 3]]);
        let single = Tournament::from_mask(1, 0);
        assert_eq!(single.dominant_sets(), vec![vec![1]]);
    }

    #[test]
    fn lemma_dominant_bound_nontransitive() {
        // |R_T| <= n-2 for every nontransitive tournament, n <= 6
        for n in 3..=6 {
            for t in Tournament::enumerate_all(n) {
                if !t.is_transitive() {
                    assert!(t.dominant_sets().len() <= n - 2);
                }
            }
        }
    }

    #[test]
    fn transitive_dominant_sets_are_prefixes() {
        for n in 1..=5 {
            for t in Tournament::enumerate_all(n).filter(Tournament::is_transitive) {
                let doms = t.dominant_sets();
                assert_eq!(doms.len(), n);
                let mut sizes: Vec<usize> = doms.iter().map(Vec::len).collect();
                sizes.sort_unstable();
                assert_eq!(sizes, (1..=n).collect::<Vec<_>>());
                let sigma = t.winner_permutation().unwrap();
                for d in &doms {
                    let mut prefix: Vec<usize> = sigma[..d.len()].to_vec();
                    prefix.sort_unstable();
                    assert_eq!(&prefix, d);
                }
            }
        }
    }

    #[test]
    fn transitivity_census() {
        let n3: Vec<_> = QSet::all_subsets(3, GroundSet::E);
        assert_eq!(n3.len(), 8);
        let nontransitive = n3.iter().filter(|q| !q.e_bar().is_transitive()).count();
        assert_eq!(nontransitive, 2);

        let transitive4 = Tournament::enumerate_all(4)
            .filter(Tournament::is_transitive)
            .count();
        assert_eq!(transitive4, 24); // 4! labeled linear orders
        let transitive3 = Tournament::enumerate_all(3)
            .filter(Tournament::is_transitive)
            .count();
        assert_eq!(transitive3, 6);
    }

    #[test]
    fn r1_family_cases() {
        assert_eq!(
            r1_family(&q(2, GroundSet::Q1, &[])),
            vec![vec![1], vec![1, 2], vec![2]]
        );
        let f3 = r1_family(&q(3, GroundSet::Q1, &[]));
        assert!(f3.contains(&vec![2]));
        assert_eq!(
            f3,
            vec![vec![1], vec![1, 2], vec![1, 2, 3], vec![2]]
        );
        let f3b = r1_family(&q(3, GroundSet::Q1, &[(2, 3)]));
        assert!(f3b.contains(&vec![3]));
        assert!(f3b.contains(&vec![1]));
        assert!(f3b.contains(&vec![1, 3]));
        assert!(f3b.contains(&vec![1, 2, 3]));
    }

    #[test]
    fn r2_family_cases() {
        let f3 = r2_family(&q(3, GroundSet::Q2, &[])).unwrap();
        assert!(f3.contains(&vec![1, 3]));
        assert!(f3.contains(&vec![1]));
        assert!(f3.contains(&vec![1, 2]));
        assert!(f3.contains(&vec![1, 2, 3]));

        let f4 = r2_family(&q(4, GroundSet::Q2, &[(3, 4)])).unwrap();
        // 4 beats 3 after the flip; 4 still loses to 1 and 2, so {1,4} is
        // the second-family set
        assert!(f4.contains(&vec![1, 4]));
    }

    #[test]
    fn r2_readings_agree_exhaustively() {
        for n in 3..=5 {
            for q2 in QSet::all_subsets(n, GroundSet::Q2) {
                r2_family(&q2).expect("second-family readings must agree");
            }
        }
    }

    #[test]
    #[allow(clippy::int_plus_one)] // "|R| <= n - 1" kept in the stated form
    fn r_family_bounds_nontransitive() {
        for n in 2..=5 {
            for q1 in QSet::all_subsets(n, GroundSet::Q1) {
                if !q1.e_bar().is_transitive() {
                    assert!(r1_family(&q1).len() <= n - 1);
                }
            }
            if n >= 3 {
                for q2 in QSet::all_subsets(n, GroundSet::Q2) {
                    if !q2.e_bar().is_transitive() {
                        assert!(r2_family(&q2).unwrap().len() <= n - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn qset_validation() {
        assert!(QSet::new(3, GroundSet::Q1, [(1, 2)]).is_err());
        assert!(QSet::new(3, GroundSet::Q2, [(3, 4)]).is_err());
        assert!(QSet::new(4, GroundSet::Q2, [(3, 4)]).is_ok());
    }

    #[test]
    fn tournament_validation() {
        assert!(Tournament::new(2, BTreeSet::from([(1, 2)])).is_ok());
        assert!(Tournament::new(2, BTreeSet::from([(1, 2), (2, 1)])).is_err());
        assert!(Tournament::new(2, BTreeSet::new()).is_err());
    }
}
