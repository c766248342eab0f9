//! The mutually inverse maps between K-Kohnert diagram pairs and reverse
//! set-valued tableau pairs, in both the direct (batched) and the
//! column-peeling recursive formulations, plus a per-composition
//! verification harness.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::compositions::{max_below_supported, WeakComposition};
use crate::diagrams::{kkd_closure, Cell, DiagramPair, StateLimitExceeded};
use crate::operators::{flat, flat_batch_traced, sharp, sharp_batch_traced, TraceStep};
use crate::polynomials::{polynomial_over, Polynomial};
use crate::tableaux::{
    encode, enumerate_rsvt, in_kkd_set_recursive, in_rsvt_set_recursive, TableauPair,
};

/// The input does not belong to the domain family of the composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipError {
    NotInDiagramFamily,
    NotInTableauFamily,
}

impl fmt::Display for MembershipError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipError::NotInDiagramFamily => {
                write!(
                    f,
                    "input is not a K-Kohnert diagram pair of the composition"
                )
            }
            MembershipError::NotInTableauFamily => {
                write!(f, "input is not a tableau pair of the composition")
            }
        }
    }
}

impl std::error::Error for MembershipError {}

/// Map a K-Kohnert diagram pair to its tableau pair. Production path is the
/// column-peeling recursion; see `psi_direct` for the batched formulation.
pub fn psi(d: &DiagramPair, alpha: &WeakComposition) -> Result<TableauPair, MembershipError> {
    if !in_kkd_set_recursive(d, alpha) {
        return Err(MembershipError::NotInDiagramFamily);
    }
    Ok(psi_rec(d, alpha))
}

fn psi_rec(d: &DiagramPair, alpha: &WeakComposition) -> TableauPair {
    if d.is_empty() {
        return TableauPair::empty();
    }
    let (k1, g1, rest) = d.split_first_column();
    let gamma = max_below_supported(alpha, &k1)
        .expect("members satisfy the column-1 subset condition")
        .decrement_positives();
    let t = psi_rec(&rest, &gamma);
    let mut cur = DiagramPair::join_first_column(&k1, &BTreeSet::new(), &t.as_diagram_pair());
    let mut vacated = Vec::new();
    for &g in &g1 {
        // each raise is defined on members; a failure here is a bug
        let res = sharp(&cur, g, alpha).expect("raise step undefined on a member");
        vacated.push(res.partner);
        cur = res.diagram;
    }
    let mut extras = cur.ghosts().clone();
    for &k in &vacated {
        extras.insert(Cell::at(1, k));
    }
    TableauPair::new(cur.kohnert().clone(), extras)
}

/// Direct formulation: batch-raise the Kohnert cells through the ghost
/// targets, then mark everything that moved away as extra cells.
pub fn psi_direct(
    d: &DiagramPair,
    alpha: &WeakComposition,
) -> Result<TableauPair, MembershipError> {
    psi_direct_traced(d, alpha).map(|(t, _)| t)
}

/// `psi_direct` plus one trace record per elementary raise.
pub fn psi_direct_traced(
    d: &DiagramPair,
    alpha: &WeakComposition,
) -> Result<(TableauPair, Vec<TraceStep>), MembershipError> {
    if !in_kkd_set_recursive(d, alpha) {
        return Err(MembershipError::NotInDiagramFamily);
    }
    let (leading, steps) = sharp_batch_traced(&d.kohnert_part(), d.ghosts(), alpha)
        .expect("batched raise undefined on a member");
    let extras = d
        .kohnert()
        .cells()
        .iter()
        .chain(d.ghosts().cells())
        .filter(|c| !leading.kohnert().contains(**c))
        .copied()
        .collect();
    Ok((TableauPair::new(leading.kohnert().clone(), extras), steps))
}

/// Map a tableau pair to its K-Kohnert diagram pair. Production path is the
/// column-peeling recursion; see `phi_direct` for the batched formulation.
pub fn phi(t: &TableauPair, alpha: &WeakComposition) -> Result<DiagramPair, MembershipError> {
    if !in_rsvt_set_recursive(t, alpha) {
        return Err(MembershipError::NotInTableauFamily);
    }
    Ok(phi_rec(t, alpha))
}

fn phi_rec(t: &TableauPair, alpha: &WeakComposition) -> DiagramPair {
    if t.is_empty() {
        return DiagramPair::empty();
    }
    let (l1, e1, inner) = t.split_first_column();
    let mut cur = DiagramPair::join_first_column(&l1, &BTreeSet::new(), &inner.as_diagram_pair());
    let mut sources = BTreeSet::new();
    for &e in e1.iter().rev() {
        let res = flat(&cur, e, alpha).expect("drop step undefined on a member");
        sources.insert(res.partner);
        cur = res.diagram;
    }
    let (l1_final, _, tail) = cur.split_first_column();
    debug_assert_eq!(
        tail,
        inner.as_diagram_pair(),
        "column-1 drops leave the tail alone"
    );
    let gamma = max_below_supported(alpha, &l1_final)
        .expect("members satisfy the column-1 subset condition")
        .decrement_positives();
    let d_inner = phi_rec(&inner, &gamma);
    DiagramPair::join_first_column(&l1_final, &sources, &d_inner)
}

/// Direct formulation: batch-drop the leading cells through the extra
/// targets, then mark everything vacated as ghost cells.
pub fn phi_direct(
    t: &TableauPair,
    alpha: &WeakComposition,
) -> Result<DiagramPair, MembershipError> {
    phi_direct_traced(t, alpha).map(|(d, _)| d)
}

/// `phi_direct` plus one trace record per elementary drop.
pub fn phi_direct_traced(
    t: &TableauPair,
    alpha: &WeakComposition,
) -> Result<(DiagramPair, Vec<TraceStep>), MembershipError> {
    if !in_rsvt_set_recursive(t, alpha) {
        return Err(MembershipError::NotInTableauFamily);
    }
    let leading_only = DiagramPair::new(t.leading().clone(), Default::default());
    let (settled, steps) = flat_batch_traced(&leading_only, t.extras(), alpha)
        .expect("batched drop undefined on a member");
    let ghosts = t
        .leading()
        .cells()
        .iter()
        .chain(t.extras().cells())
        .filter(|c| !settled.kohnert().contains(**c))
        .copied()
        .collect();
    Ok((DiagramPair::new(settled.kohnert().clone(), ghosts), steps))
}

/// Round-trip verification for one composition: enumerate both families
/// (optionally truncated by excess), push every element through the two
/// maps, and compare the weighted generating polynomials.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub alpha: WeakComposition,
    pub max_excess: Option<usize>,
    pub kkd_size: usize,
    pub rsvt_size: usize,
    /// Elements of the diagram family that survive the round trip.
    pub diagram_round_trips: usize,
    /// Elements of the tableau family that survive the round trip.
    pub tableau_round_trips: usize,
    pub weight_failures: usize,
    pub excess_failures: usize,
    pub image_failures: usize,
    pub lascoux_via_diagrams: Polynomial,
    pub lascoux_via_tableaux: Polynomial,
    pub polynomials_equal: bool,
    pub ok: bool,
}

impl VerificationReport {
    pub fn summary_line(&self) -> String {
        format!(
            "alpha={} kkd={} rsvt={} round_trips={}/{} wt_fail={} ex_fail={} image_fail={} poly={} => {}",
            self.alpha,
            self.kkd_size,
            self.rsvt_size,
            self.diagram_round_trips + self.tableau_round_trips,
            self.kkd_size + self.rsvt_size,
            self.weight_failures,
            self.excess_failures,
            self.image_failures,
            if self.polynomials_equal { "equal" } else { "MISMATCH" },
            if self.ok { "ok" } else { "FAIL" },
        )
    }
}

/// Run the full bijection check for `alpha` with the given excess cap and
/// closure state cap.
pub fn verify_bijection(
    alpha: &WeakComposition,
    max_excess: Option<usize>,
    state_cap: usize,
) -> Result<VerificationReport, StateLimitExceeded> {
    let n = alpha.len();
    let within = |ex: usize| max_excess.is_none_or(|m| ex <= m);
    let kkd: Vec<DiagramPair> = kkd_closure(alpha, state_cap)?
        .into_iter()
        .filter(|d| within(d.excess()))
        .collect();
    let tableaux: Vec<TableauPair> = enumerate_rsvt(alpha, max_excess)
        .iter()
        .map(encode)
        .collect();
    let kkd_set: BTreeSet<&DiagramPair> = kkd.iter().collect();
    let tab_set: BTreeSet<&TableauPair> = tableaux.iter().collect();

    let mut diagram_round_trips = 0;
    let mut tableau_round_trips = 0;
    let mut weight_failures = 0;
    let mut excess_failures = 0;
    let mut image_failures = 0;

    for d in &kkd {
        let t = psi(d, alpha).expect("closure element rejected by membership");
        if !tab_set.contains(&t) {
            image_failures += 1;
        }
        if t.weight(n) != d.weight(n) {
            weight_failures += 1;
        }
        if t.excess() != d.excess() {
            excess_failures += 1;
        }
        match phi(&t, alpha) {
            Ok(back) if back == *d => diagram_round_trips += 1,
            _ => {}
        }
    }
    for t in &tableaux {
        let d = phi(t, alpha).expect("enumerated tableau rejected by membership");
        if !kkd_set.contains(&d) {
            image_failures += 1;
        }
        if d.weight(n) != t.weight(n) {
            weight_failures += 1;
        }
        if d.excess() != t.excess() {
            excess_failures += 1;
        }
        match psi(&d, alpha) {
            Ok(back) if back == *t => tableau_round_trips += 1,
            _ => {}
        }
    }

    let lascoux_via_diagrams = polynomial_over(n, kkd.iter().map(|d| (d.weight(n), d.excess())));
    let lascoux_via_tableaux =
        polynomial_over(n, tableaux.iter().map(|t| (t.weight(n), t.excess())));
    let polynomials_equal = lascoux_via_diagrams == lascoux_via_tableaux;
    let ok = kkd.len() == tableaux.len()
        && diagram_round_trips == kkd.len()
        && tableau_round_trips == tableaux.len()
        && weight_failures == 0
        && excess_failures == 0
        && image_failures == 0
        && polynomials_equal;
    Ok(VerificationReport {
        alpha: alpha.clone(),
        max_excess,
        kkd_size: kkd.len(),
        rsvt_size: tableaux.len(),
        diagram_round_trips,
        tableau_round_trips,
        weight_failures,
        excess_failures,
        image_failures,
        lascoux_via_diagrams,
        lascoux_via_tableaux,
        polynomials_equal,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compositions::all_compositions;
    use crate::diagrams::{kd_closure, DEFAULT_STATE_CAP};

    fn wc(parts: &[usize]) -> WeakComposition {
        WeakComposition::new(parts.to_vec())
    }

    fn dpair(kohnert: &[(usize, usize)], ghosts: &[(usize, usize)]) -> DiagramPair {
        DiagramPair::new(
            kohnert.iter().map(|&(c, r)| Cell::at(c, r)).collect(),
            ghosts.iter().map(|&(c, r)| Cell::at(c, r)).collect(),
        )
    }

    fn tpair(leading: &[(usize, usize)], extras: &[(usize, usize)]) -> TableauPair {
        TableauPair::new(
            leading.iter().map(|&(c, r)| Cell::at(c, r)).collect(),
            extras.iter().map(|&(c, r)| Cell::at(c, r)).collect(),
        )
    }

    #[test]
    fn psi_on_the_two_ghost_pair() {
        let alpha = wc(&[0, 2, 1]);
        let d = dpair(&[(1, 2), (1, 1), (2, 1)], &[(1, 3), (2, 2)]);
        let want = tpair(&[(1, 2), (1, 3), (2, 2)], &[(1, 1), (2, 1)]);
        assert_eq!(psi(&d, &alpha).unwrap(), want);
        assert_eq!(psi_direct(&d, &alpha).unwrap(), want);
    }

    #[test]
    fn phi_on_the_two_extra_tableau() {
        let alpha = wc(&[0, 2, 1]);
        let t = tpair(&[(1, 2), (1, 3), (2, 2)], &[(1, 1), (2, 1)]);
        let want = dpair(&[(1, 2), (1, 1), (2, 1)], &[(1, 3), (2, 2)]);
        assert_eq!(phi(&t, &alpha).unwrap(), want);
        assert_eq!(phi_direct(&t, &alpha).unwrap(), want);
    }

    #[test]
    fn maps_restrict_to_identity_without_ghosts() {
        for alpha in all_compositions(3, 2) {
            for d in kd_closure(&alpha, DEFAULT_STATE_CAP).unwrap() {
                let t = psi(&d, &alpha).unwrap();
                assert_eq!(t.leading(), d.kohnert(), "alpha={alpha}");
                assert!(t.extras().is_empty());
                assert_eq!(phi(&t, &alpha).unwrap(), d);
            }
        }
    }

    #[test]
    fn membership_errors_are_reported() {
        let alpha = wc(&[0, 2, 1]);
        let stray = dpair(&[(1, 1), (1, 2), (2, 3)], &[]);
        assert_eq!(
            psi(&stray, &alpha),
            Err(MembershipError::NotInDiagramFamily)
        );
        let stray_t = tpair(&[(1, 1), (2, 5)], &[]);
        assert_eq!(
            phi(&stray_t, &alpha),
            Err(MembershipError::NotInTableauFamily)
        );
    }

    #[test]
    fn rank_four_round_trips_exhaustively() {
        for alpha in all_compositions(4, 2) {
            let report = verify_bijection(&alpha, None, DEFAULT_STATE_CAP).unwrap();
            assert!(report.ok, "{}", report.summary_line());
        }
    }

    #[test]
    fn recursive_and_direct_formulations_agree() {
        for alpha in all_compositions(3, 2) {
            let kkd = kkd_closure(&alpha, DEFAULT_STATE_CAP).unwrap();
            for d in &kkd {
                let t = psi(d, &alpha).unwrap();
                assert_eq!(psi_direct(d, &alpha).unwrap(), t, "alpha={alpha}");
                assert_eq!(phi_direct(&t, &alpha).unwrap(), *d, "alpha={alpha}");
                assert_eq!(phi(&t, &alpha).unwrap(), *d, "alpha={alpha}");
            }
        }
    }

    #[test]
    fn worked_example_partner_sequence() {
        // the seven-row example: raises into rows 3, 5, 6 vacate rows 2, 4, 1
        let alpha = wc(&[0, 0, 2, 0, 3, 1, 2]);
        let d = dpair(
            &[
                (1, 7),
                (1, 4),
                (2, 4),
                (3, 4),
                (1, 2),
                (2, 2),
                (1, 1),
                (2, 5),
            ],
            &[(1, 6), (2, 6), (1, 5), (1, 3)],
        );
        let (t, steps) = psi_direct_traced(&d, &alpha).unwrap();
        let col1: Vec<(usize, usize)> = steps
            .iter()
            .filter(|s| s.g_or_k.0 == 1)
            .map(|s| (s.g_or_k.1, s.partner))
            .collect();
        assert_eq!(col1, vec![(3, 2), (5, 4), (6, 1)]);
        let want = tpair(
            &[
                (1, 7),
                (1, 6),
                (2, 6),
                (1, 5),
                (2, 4),
                (3, 4),
                (1, 3),
                (2, 2),
            ],
            &[(2, 5), (1, 4), (1, 2), (1, 1)],
        );
        assert_eq!(t, want);
        assert_eq!(psi(&d, &alpha).unwrap(), want);

        let (back, steps) = phi_direct_traced(&want, &alpha).unwrap();
        assert_eq!(back, d);
        let col1: Vec<(usize, usize)> = steps
            .iter()
            .filter(|s| s.g_or_k.0 == 1)
            .map(|s| (s.g_or_k.1, s.partner))
            .collect();
        assert_eq!(col1, vec![(4, 5), (2, 3), (1, 6)]);
    }

    #[test]
    fn verify_bijection_examples() {
        let report = verify_bijection(&wc(&[0, 2, 1]), None, DEFAULT_STATE_CAP).unwrap();
        assert!(report.ok, "{}", report.summary_line());
        assert_eq!(report.kkd_size, 11);
        assert_eq!(report.rsvt_size, 11);

        let report = verify_bijection(&wc(&[0, 0]), None, DEFAULT_STATE_CAP).unwrap();
        assert!(report.ok);
        assert_eq!(report.kkd_size, 1);

        let capped = verify_bijection(&wc(&[0, 2, 1]), Some(1), DEFAULT_STATE_CAP).unwrap();
        assert!(capped.ok);
        assert_eq!(capped.kkd_size, 10);
    }

    #[test]
    fn traces_replay_each_move() {
        let alpha = wc(&[0, 2, 1]);
        let d = dpair(&[(1, 2), (1, 1), (2, 1)], &[(1, 3), (2, 2)]);
        let (_, steps) = psi_direct_traced(&d, &alpha).unwrap();
        assert_eq!(steps.len(), 2);
        for s in &steps {
            assert_eq!(s.op, "sharp");
            assert!(s.before.kohnert().len() == s.after.kohnert().len());
        }
        assert_eq!(steps[0].after, steps[1].before);
        let json = serde_json::to_value(&steps[0]).unwrap();
        assert!(json.get("g_or_k").is_some() && json.get("partner").is_some());
    }

    #[test]
    fn psi_direct_uses_ghost_free_batches() {
        // a target diagram that collides with an existing cell still resolves
        let alpha = wc(&[0, 2, 1]);
        let d = dpair(&[(1, 3), (1, 1), (2, 1)], &[(1, 2)]);
        let t = psi(&d, &alpha).unwrap();
        assert_eq!(t, psi_direct(&d, &alpha).unwrap());
        assert_eq!(phi(&t, &alpha).unwrap(), d);
    }
}
