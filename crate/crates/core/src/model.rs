//! Election data model: candidates, ballots, scores, and winner sets for
//! approval voting and scoring protocols.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Index of a candidate within an election's candidate list. Candidate
/// identity is the string label; the index is only valid relative to the
/// election that issued it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateId(pub usize);

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// How ballots were supplied. Succinct input carries per-type multiplicities;
/// in standard input every ballot record stands for exactly one voter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputMode {
    Standard,
    Succinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WinnerModel {
    Unique,
    NonUnique,
}

/// A complete strict ranking of the election's candidates, most preferred
/// first, with an integer weight and (for succinct input) a multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearBallot {
    pub ranking: Vec<CandidateId>,
    pub weight: u64,
    pub multiplicity: u64,
}

impl LinearBallot {
    pub fn new(ranking: Vec<CandidateId>) -> Self {
        LinearBallot {
            ranking,
            weight: 1,
            multiplicity: 1,
        }
    }

    pub fn weighted(ranking: Vec<CandidateId>, weight: u64) -> Self {
        LinearBallot {
            ranking,
            weight,
            multiplicity: 1,
        }
    }

    /// Highest-ranked candidate among `keep`, if any.
    pub fn top_among(&self, keep: &BTreeSet<CandidateId>) -> Option<CandidateId> {
        self.ranking.iter().copied().find(|c| keep.contains(c))
    }
}

/// An approval vector, stored as the approved set. Empty sets are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApprovalBallot {
    pub approved: BTreeSet<CandidateId>,
    pub weight: u64,
    pub multiplicity: u64,
}

impl ApprovalBallot {
    pub fn new(approved: impl IntoIterator<Item = CandidateId>) -> Self {
        ApprovalBallot {
            approved: approved.into_iter().collect(),
            weight: 1,
            multiplicity: 1,
        }
    }

    pub fn approves(&self, c: CandidateId) -> bool {
        self.approved.contains(&c)
    }
}

/// An election: a candidate list plus a homogeneous ballot list. All values
/// are immutable after construction; operations are pure functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election<B> {
    candidates: Vec<String>,
    pub ballots: Vec<B>,
    pub mode: InputMode,
}

pub type LinearElection = Election<LinearBallot>;
pub type ApprovalElection = Election<ApprovalBallot>;

impl<B> Election<B> {
    pub fn new(candidates: Vec<String>, ballots: Vec<B>, mode: InputMode) -> Self {
        debug_assert!(
            candidates.iter().collect::<BTreeSet<_>>().len() == candidates.len(),
            "candidate labels must be distinct"
        );
        Election {
            candidates,
            ballots,
            mode,
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> {
        (0..self.candidates.len()).map(CandidateId)
    }

    pub fn candidate_set(&self) -> BTreeSet<CandidateId> {
        self.candidate_ids().collect()
    }

    pub fn label(&self, c: CandidateId) -> &str {
        &self.candidates[c.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.candidates
    }

    pub fn id_of(&self, label: &str) -> Option<CandidateId> {
        self.candidates
            .iter()
            .position(|l| l == label)
            .map(CandidateId)
    }
}

impl LinearElection {
    /// Total voter count, multiplicities included.
    pub fn num_voters(&self) -> u64 {
        self.ballots.iter().map(|b| b.multiplicity).sum()
    }

    /// Expand multiplicities into unit records (succinct -> standard).
    pub fn expand(&self) -> LinearElection {
        let ballots = self
            .ballots
            .iter()
            .flat_map(|b| {
                (0..b.multiplicity).map(|_| LinearBallot {
                    ranking: b.ranking.clone(),
                    weight: b.weight,
                    multiplicity: 1,
                })
            })
            .collect();
        Election::new(self.candidates.clone(), ballots, InputMode::Standard)
    }
}

impl ApprovalElection {
    pub fn num_voters(&self) -> u64 {
        self.ballots.iter().map(|b| b.multiplicity).sum()
    }

    pub fn expand(&self) -> ApprovalElection {
        let ballots = self
            .ballots
            .iter()
            .flat_map(|b| {
                (0..b.multiplicity).map(|_| ApprovalBallot {
                    approved: b.approved.clone(),
                    weight: b.weight,
                    multiplicity: 1,
                })
            })
            .collect();
        Election::new(self.candidates.clone(), ballots, InputMode::Standard)
    }
}

/// A scoring protocol for a fixed number of candidates, given by its
/// non-increasing point vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoringVector {
    alpha: Vec<u64>,
}

impl ScoringVector {
    pub fn new(alpha: Vec<u64>) -> Result<Self> {
        if alpha.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInstance(
                "scoring vector must be non-increasing".into(),
            ));
        }
        Ok(ScoringVector { alpha })
    }

    pub fn plurality(m: usize) -> Self {
        let mut alpha = vec![0; m];
        if m > 0 {
            alpha[0] = 1;
        }
        ScoringVector { alpha }
    }

    pub fn borda(m: usize) -> Self {
        ScoringVector {
            alpha: (0..m).rev().map(|x| x as u64).collect(),
        }
    }

    /// j-veto: a point for everyone except the j least preferred.
    pub fn j_veto(m: usize, j: usize) -> Self {
        assert!(j <= m);
        let mut alpha = vec![1; m];
        for a in alpha.iter_mut().skip(m - j) {
            *a = 0;
        }
        ScoringVector { alpha }
    }

    /// k-approval: a point for each of the k most preferred.
    pub fn k_approval(m: usize, k: usize) -> Self {
        assert!(k <= m);
        Self::j_veto(m, m - k)
    }

    pub fn veto(m: usize) -> Self {
        Self::j_veto(m, 1)
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// Equivalent vector with the last entry shifted to zero. Shifting every
    /// entry by a constant changes every candidate's score by the same
    /// amount, so winner sets are unchanged.
    pub fn normalized(&self) -> ScoringVector {
        let last = self.alpha.last().copied().unwrap_or(0);
        ScoringVector {
            alpha: self.alpha.iter().map(|a| a - last).collect(),
        }
    }
}

/// Candidate scores, reported in the election's candidate-list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    scores: Vec<u64>,
}

impl ScoreTable {
    pub(crate) fn from_vec(scores: Vec<u64>) -> Self {
        ScoreTable { scores }
    }

    pub fn get(&self, c: CandidateId) -> u64 {
        self.scores[c.0]
    }

    pub fn iter(&self) -> impl Iterator<Item = (CandidateId, u64)> + '_ {
        self.scores
            .iter()
            .enumerate()
            .map(|(i, &s)| (CandidateId(i), s))
    }

    pub fn max_score(&self) -> Option<u64> {
        self.scores.iter().copied().max()
    }

    /// Winners under the given model. The unique-winner model yields the
    /// empty set on ties; elections with no winners are legal output.
    pub fn winners(&self, model: WinnerModel) -> BTreeSet<CandidateId> {
        let Some(max) = self.max_score() else {
            return BTreeSet::new();
        };
        let top: Vec<CandidateId> = self
            .iter()
            .filter(|&(_, s)| s == max)
            .map(|(c, _)| c)
            .collect();
        match model {
            WinnerModel::NonUnique => top.into_iter().collect(),
            WinnerModel::Unique if top.len() == 1 => top.into_iter().collect(),
            WinnerModel::Unique => BTreeSet::new(),
        }
    }
}

/// Approval score of every candidate: the weighted number of approvals.
pub fn approval_scores(e: &ApprovalElection) -> ScoreTable {
    let mut scores = vec![0u64; e.num_candidates()];
    for b in &e.ballots {
        for &c in &b.approved {
            scores[c.0] += b.weight * b.multiplicity;
        }
    }
    ScoreTable::from_vec(scores)
}

/// Scores under a scoring protocol: each ballot contributes `alpha[i]`
/// points (times weight and multiplicity) to its i-th ranked candidate.
pub fn scoring_scores(e: &LinearElection, alpha: &ScoringVector) -> Result<ScoreTable> {
    if alpha.len() != e.num_candidates() {
        return Err(Error::ScoringLengthMismatch {
            vector: alpha.len(),
            candidates: e.num_candidates(),
        });
    }
    let mut scores = vec![0u64; e.num_candidates()];
    for b in &e.ballots {
        debug_assert_eq!(b.ranking.len(), e.num_candidates());
        for (pos, &c) in b.ranking.iter().enumerate() {
            scores[c.0] += alpha.alpha()[pos] * b.weight * b.multiplicity;
        }
    }
    Ok(ScoreTable::from_vec(scores))
}

/// Plurality scores of the election restricted to `keep`, without
/// materializing the restricted election.
pub fn plurality_scores_restricted(
    e: &LinearElection,
    keep: &BTreeSet<CandidateId>,
) -> ScoreTable {
    let mut scores = vec![0u64; e.num_candidates()];
    for b in &e.ballots {
        if let Some(top) = b.top_among(keep) {
            scores[top.0] += b.weight * b.multiplicity;
        }
    }
    ScoreTable::from_vec(scores)
}

/// Rule argument for winner determination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VoteRule {
    Approval,
    Scoring(ScoringVector),
}

/// Winner set of an election under a rule compatible with its ballot kind.
pub enum AnyElection<'a> {
    Linear(&'a LinearElection),
    Approval(&'a ApprovalElection),
}

pub fn winners(
    e: AnyElection<'_>,
    rule: &VoteRule,
    model: WinnerModel,
) -> Result<BTreeSet<CandidateId>> {
    let table = match (e, rule) {
        (AnyElection::Approval(e), VoteRule::Approval) => approval_scores(e),
        (AnyElection::Linear(e), VoteRule::Scoring(alpha)) => scoring_scores(e, alpha)?,
        (AnyElection::Linear(_), VoteRule::Approval) => {
            return Err(Error::WrongBallotKind {
                expected: "approval",
            })
        }
        (AnyElection::Approval(_), VoteRule::Scoring(_)) => {
            return Err(Error::WrongBallotKind { expected: "linear" })
        }
    };
    Ok(table.winners(model))
}

/// Restrict a linear-ballot election to a candidate subset, preserving the
/// order within each ballot. Candidate labels survive; ids are reissued.
pub fn restrict(e: &LinearElection, keep: &BTreeSet<CandidateId>) -> Result<LinearElection> {
    if keep.is_empty() || keep.iter().any(|c| c.0 >= e.num_candidates()) {
        return Err(Error::BadKeepSet);
    }
    let kept: Vec<CandidateId> = e.candidate_ids().filter(|c| keep.contains(c)).collect();
    let mut new_id = vec![usize::MAX; e.num_candidates()];
    for (i, c) in kept.iter().enumerate() {
        new_id[c.0] = i;
    }
    let candidates = kept.iter().map(|&c| e.label(c).to_owned()).collect();
    let ballots = e
        .ballots
        .iter()
        .map(|b| LinearBallot {
            ranking: b
                .ranking
                .iter()
                .filter(|c| keep.contains(c))
                .map(|c| CandidateId(new_id[c.0]))
                .collect(),
            weight: b.weight,
            multiplicity: b.multiplicity,
        })
        .collect();
    Ok(Election::new(candidates, ballots, e.mode))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn election_from_labels<B>(labels: &[&str], ballots: Vec<B>) -> Election<B> {
        Election::new(
            labels.iter().map(|s| s.to_string()).collect(),
            ballots,
            InputMode::Standard,
        )
    }

    fn ranking(e: &LinearElection, order: &[&str]) -> Vec<CandidateId> {
        order.iter().map(|l| e.id_of(l).unwrap()).collect()
    }

    #[test]
    fn approval_scores_count_weights_and_multiplicities() {
        // approve{a} x3, approve{a,b} x1 -> a:4, b:1
        let mut e = election_from_labels(&["a", "b"], Vec::new());
        let a = e.id_of("a").unwrap();
        let b = e.id_of("b").unwrap();
        e.ballots = vec![
            ApprovalBallot {
                approved: [a].into(),
                weight: 1,
                multiplicity: 3,
            },
            ApprovalBallot::new([a, b]),
        ];
        e.mode = InputMode::Succinct;
        let t = approval_scores(&e);
        assert_eq!(t.get(a), 4);
        assert_eq!(t.get(b), 1);
    }

    #[test]
    fn approval_scores_empty_election() {
        let e = election_from_labels::<ApprovalBallot>(&["a"], Vec::new());
        let t = approval_scores(&e);
        assert_eq!(t.get(CandidateId(0)), 0);
    }

    #[test]
    fn approval_scores_weighted_multiplicity() {
        let mut e = election_from_labels(&["p", "r"], Vec::new());
        let r = e.id_of("r").unwrap();
        e.ballots = vec![ApprovalBallot {
            approved: [r].into(),
            weight: 1,
            multiplicity: 2,
        }];
        e.mode = InputMode::Succinct;
        let t = approval_scores(&e);
        assert_eq!(t.get(e.id_of("p").unwrap()), 0);
        assert_eq!(t.get(r), 2);
    }

    #[test]
    fn scoring_scores_borda_three() {
        let mut e = election_from_labels(&["a", "p", "b"], Vec::new());
        e.ballots = vec![LinearBallot::weighted(ranking(&e, &["a", "p", "b"]), 5)];
        let alpha = ScoringVector::new(vec![2, 1, 0]).unwrap();
        let t = scoring_scores(&e, &alpha).unwrap();
        assert_eq!(t.get(e.id_of("a").unwrap()), 10);
        assert_eq!(t.get(e.id_of("p").unwrap()), 5);
        assert_eq!(t.get(e.id_of("b").unwrap()), 0);
    }

    #[test]
    fn scoring_scores_constant_vector_gives_total_weight() {
        let mut e = election_from_labels(&["a", "b", "c"], Vec::new());
        e.ballots = vec![
            LinearBallot::weighted(ranking(&e, &["a", "b", "c"]), 3),
            LinearBallot::weighted(ranking(&e, &["c", "b", "a"]), 4),
        ];
        let alpha = ScoringVector::new(vec![1, 1, 1]).unwrap();
        let t = scoring_scores(&e, &alpha).unwrap();
        for c in e.candidate_ids() {
            assert_eq!(t.get(c), 7);
        }
    }

    #[test]
    fn scoring_scores_borda_four_reduction_profile() {
        // S = {c>p>b>a w=11, b>a>p>c w=7} under (3,2,1,0):
        // a:14, b:32, p:29, c:33.
        let mut e = election_from_labels(&["a", "b", "p", "c"], Vec::new());
        e.ballots = vec![
            LinearBallot::weighted(ranking(&e, &["c", "p", "b", "a"]), 11),
            LinearBallot::weighted(ranking(&e, &["b", "a", "p", "c"]), 7),
        ];
        let alpha = ScoringVector::new(vec![3, 2, 1, 0]).unwrap();
        let t = scoring_scores(&e, &alpha).unwrap();
        assert_eq!(t.get(e.id_of("a").unwrap()), 14);
        assert_eq!(t.get(e.id_of("b").unwrap()), 32);
        assert_eq!(t.get(e.id_of("p").unwrap()), 29);
        assert_eq!(t.get(e.id_of("c").unwrap()), 33);
    }

    #[test]
    fn scoring_scores_rejects_length_mismatch() {
        let e = election_from_labels::<LinearBallot>(&["a", "b"], Vec::new());
        let alpha = ScoringVector::new(vec![1, 0, 0]).unwrap();
        assert!(matches!(
            scoring_scores(&e, &alpha),
            Err(Error::ScoringLengthMismatch { .. })
        ));
    }

    #[test]
    fn winners_strict_max_and_ties() {
        let t = ScoreTable::from_vec(vec![4, 1]);
        assert_eq!(
            t.winners(WinnerModel::NonUnique),
            [CandidateId(0)].into_iter().collect()
        );
        let tie = ScoreTable::from_vec(vec![2, 2]);
        assert!(tie.winners(WinnerModel::Unique).is_empty());
        assert_eq!(tie.winners(WinnerModel::NonUnique).len(), 2);
    }

    #[test]
    fn all_zero_protocol_everybody_wins() {
        let mut e = election_from_labels(&["a", "b", "c"], Vec::new());
        e.ballots = vec![LinearBallot::new(ranking(&e, &["a", "b", "c"]))];
        let alpha = ScoringVector::new(vec![0, 0, 0]).unwrap();
        let w = winners(
            AnyElection::Linear(&e),
            &VoteRule::Scoring(alpha),
            WinnerModel::NonUnique,
        )
        .unwrap();
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn restrict_preserves_order() {
        let mut e = election_from_labels(&["a", "b", "c", "d"], Vec::new());
        e.ballots = vec![LinearBallot::new(ranking(&e, &["b", "a", "c", "d"]))];
        let keep: BTreeSet<_> = ["a", "b", "c"].iter().map(|l| e.id_of(l).unwrap()).collect();
        let r = restrict(&e, &keep).unwrap();
        let order: Vec<&str> = r.ballots[0].ranking.iter().map(|&c| r.label(c)).collect();
        assert_eq!(order, vec!["b", "a", "c"]);
    }

    #[test]
    fn restrict_to_full_set_is_identity() {
        let mut e = election_from_labels(&["a", "b", "c"], Vec::new());
        e.ballots = vec![LinearBallot::new(ranking(&e, &["a", "b", "c"]))];
        let r = restrict(&e, &e.candidate_set()).unwrap();
        assert_eq!(r, e);
    }

    #[test]
    fn restrict_rejects_empty_keep() {
        let e = election_from_labels::<LinearBallot>(&["a"], Vec::new());
        assert!(matches!(
            restrict(&e, &BTreeSet::new()),
            Err(Error::BadKeepSet)
        ));
    }

    #[test]
    fn j_veto_equals_k_approval() {
        for m in 1..=6 {
            for j in 0..=m {
                assert_eq!(ScoringVector::j_veto(m, j), ScoringVector::k_approval(m, m - j));
            }
        }
    }

    #[test]
    fn expand_preserves_scores() {
        let mut e = election_from_labels(&["a", "b"], Vec::new());
        let a = e.id_of("a").unwrap();
        e.ballots = vec![ApprovalBallot {
            approved: [a].into(),
            weight: 3,
            multiplicity: 4,
        }];
        e.mode = InputMode::Succinct;
        let before = approval_scores(&e);
        let after = approval_scores(&e.expand());
        assert_eq!(before, after);
    }
}
