//! Per-family pruning pipelines. Each rule names the auxiliary valuations a
//! case analysis compares against.

use crate::arith::{mod_inverse, q, Q};
use crate::threshold::{bezout_split, ca_split, delta_data};
use crate::weights::{numerator_scaling, FamilyParams, FamilyTag, WeightVec};

use super::{AuxSpec, Frame, PruneRule, RuleAction};

fn weight(k: &[i64], n: u64) -> Option<WeightVec> {
    WeightVec::from_signed(k, n as i64).ok()
}

fn aux(k: &[i64], n: u64, a_prime: i64, mu: Q) -> AuxSpec {
    AuxSpec { weight: weight(k, n), a_prime, mu }
}

/// Membership entry; `None` when the weight is degenerate.
fn member_aux(fr: &Frame, k: &[i64], a_prime: i64) -> Option<AuxSpec> {
    let w = weight(k, fr.weight.index())?;
    let mu = numerator_scaling(&w, &fr.weight);
    Some(AuxSpec { weight: Some(w), a_prime, mu })
}

fn member(name: &'static str, list: Vec<Option<AuxSpec>>) -> Option<PruneRule> {
    let list: Option<Vec<AuxSpec>> = list.into_iter().collect();
    Some(PruneRule { name, action: RuleAction::Member(list?) })
}

fn window(name: &'static str, list: Vec<AuxSpec>) -> PruneRule {
    PruneRule { name, action: RuleAction::Window(list) }
}

fn character_rule() -> PruneRule {
    PruneRule { name: "R-parity", action: RuleAction::Character }
}

/// Rewrites a cA/n member with `b = -1 (mod n)` by exchanging `x` and `y`,
/// so the rules can assume `b = 1`.
pub fn frame(p: &FamilyParams) -> Frame {
    match *p {
        FamilyParams::CAn { n, b, r1, r2, a, d } if n > 2 && b == n - 1 => Frame::new(
            FamilyParams::CAn { n, b: 1, r1: r2, r2: r1, a, d },
            Some("x and y exchanged so that b = 1"),
        ),
        _ => Frame::new(*p, None),
    }
}

/// Names of every rule a family's pipeline may contain, in proof order.
pub fn rule_names(tag: FamilyTag) -> &'static [&'static str] {
    match tag {
        FamilyTag::Smooth => &["R-lb", "R-dagger3"],
        FamilyTag::CA => &["R-cAub", "R-easycA", "R-d3", "R-d2", "R-w3"],
        FamilyTag::CAn => &[
            "R-parity", "R-bpm1", "R-d1", "R-xf", "R-n2", "R-nbound", "R-cAnub", "R-claimm", "R-cases",
        ],
        FamilyTag::CD1 => &["R-cDdm0", "R-dagger6"],
        FamilyTag::CD2 => &["R-id"],
        FamilyTag::CD2q1 => &["R-parity", "R-d2m", "R-dagger7"],
        FamilyTag::CD2q2 => &["R-parity", "R-zinf"],
    }
}

/// The rules that apply to one family member.
pub fn pipeline(fr: &Frame) -> Vec<PruneRule> {
    let mut rules: Vec<Option<PruneRule>> = Vec::new();
    let a = fr.a;
    match fr.params {
        FamilyParams::Smooth { a: wa, b: wb, .. } => {
            let (wa, wb) = (wa as i64, wb as i64);
            // x carries weight 1, y weight a, z weight b.
            if wa >= 2 {
                if let Ok(sp) = bezout_split(wa, wb) {
                    rules.push(Some(window(
                        "R-lb",
                        vec![
                            aux(&[1, sp.s, sp.t], 1, sp.s + sp.t, q(sp.s, wa)),
                            aux(&[1, sp.s_bar, sp.t_bar], 1, sp.s_bar + sp.t_bar, q(sp.t_bar, wb)),
                        ],
                    )));
                }
            } else if wb >= 2 {
                rules.push(Some(window("R-dagger3", vec![aux(&[1, 1, wb - 1], 1, wb, q(wb - 1, wb))])));
            }
        }
        FamilyParams::CA { r1, r2, d, .. } => {
            let (r1, r2, d) = (r1 as i64, r2 as i64, d as i64);
            if let Ok(sp) = ca_split(r1, r2, a) {
                rules.push(Some(window(
                    "R-cAub",
                    vec![
                        aux(&[r1 - sp.a2 * d + sp.s2_star, r2 - sp.s2_star, sp.a1, 1], 1, sp.a1, q(r2 - sp.s2_star, r2)),
                        aux(&[r1 - sp.s1_star, r2 - sp.a1 * d + sp.s1_star, sp.a2, 1], 1, sp.a2, q(r1 - sp.s1_star, r1)),
                    ],
                )));
            }
            if d >= 4 {
                rules.push(member("R-easycA", vec![member_aux(fr, &[d - 2, 2, 1, 1], 1)]));
            }
            if d == 3 {
                rules.push(member("R-d3", vec![member_aux(fr, &[1, 2, 1, 1], 1), member_aux(fr, &[2, 1, 1, 1], 1)]));
            }
            if d == 2 {
                rules.push(member("R-d2", vec![member_aux(fr, &[1, 1, 1, 1], 1)]));
                if r1 == 1 || r2 == 1 {
                    let k = if r1 == 1 { [1, 2 * a - 3, a - 1, 1] } else { [2 * a - 3, 1, a - 1, 1] };
                    rules.push(Some(window("R-w3", vec![aux(&k, 1, a - 1, q(2 * a - 3, 2 * a - 1))])));
                }
            }
        }
        FamilyParams::CAn { n, b, r1, r2, d, .. } => {
            rules.push(Some(character_rule()));
            let (ni, bi, r1, r2, d) = (n as i64, b as i64, r1 as i64, r2 as i64, d as i64);
            let dn = d * ni;
            if b != 1 {
                let b_star = mod_inverse(bi, ni).expect("b is a unit");
                rules.push(member("R-bpm1", vec![member_aux(fr, &[b_star, dn - b_star, 1, ni], 1)]));
            } else {
                if dn - ni >= 3 {
                    rules.push(member("R-d1", vec![member_aux(fr, &[ni + 1, dn - ni - 1, 1, ni], 1)]));
                }
                let mut xf = vec![member_aux(fr, &[1, dn - 1, 1, ni], 1)];
                if n == 2 {
                    xf.push(member_aux(fr, &[dn - 1, 1, 1, ni], 1));
                }
                rules.push(member("R-xf", xf));
                if n >= 3 && d == 1 {
                    rules.push(member("R-n2", vec![member_aux(fr, &[ni + 3, 2 * ni - 3, 3, ni], 3)]));
                }
            }
            if a > 3 {
                // Smallest s1' > n with 3 = b s1' (mod n) and 3dn - s1' > n.
                let target = (3 * mod_inverse(bi, ni).expect("b is a unit")).rem_euclid(ni);
                let s1 = (ni + 1..3 * dn).find(|s| s.rem_euclid(ni) == target);
                if let Some(s1) = s1.filter(|&s| 3 * dn - s > ni) {
                    rules.push(member("R-nbound", vec![member_aux(fr, &[s1, 3 * dn - s1, 3, ni], 3)]));
                }
            }
            if let Ok(dd) = delta_data(ni, bi, r1, r2, a) {
                let list = if dd.delta1 > 0 {
                    let (s, del) = (dd.s1_star, dd.delta1);
                    vec![
                        aux(&[r1 - s, r2 - del * dn + s, a - del, ni], n, a - del, q(r1 - s, r1)),
                        aux(&[s, del * dn - s, del, ni], n, del, q(del * dn - s, r2)),
                    ]
                } else {
                    let (s, del) = (dd.s2_star, dd.delta2);
                    vec![
                        aux(&[r1 - del * dn + s, r2 - s, a - del, ni], n, a - del, q(r2 - s, r2)),
                        aux(&[del * dn - s, s, del, ni], n, del, q(del * dn - s, r1)),
                    ]
                };
                rules.push(Some(window("R-cAnub", list)));
            }
            if n == 2 && d == 1 {
                // Orient so that the smaller of r1, r2 sits on x.
                let swap = r1 > r2;
                let (small, big) = if swap { (r2, r1) } else { (r1, r2) };
                let orient = |k: [i64; 4]| if swap { [k[1], k[0], k[2], k[3]] } else { k };
                if big >= 5 {
                    rules.push(member("R-claimm", vec![member_aux(fr, &orient([small, big - 4, a - 2, 2]), a - 2)]));
                }
                if small == 3 && a % 6 == 1 {
                    let t = (a - 1) / 6;
                    rules.push(member("R-cases", vec![member_aux(fr, &orient([1, 4 * t + 1, 2 * t + 1, 2]), 2 * t + 1)]));
                }
                if small == 3 && a % 6 == 5 {
                    let t = (a - 5) / 6;
                    rules.push(member("R-cases", vec![member_aux(fr, &orient([2, 8 * t + 6, 4 * t + 4, 2]), 4 * t + 4)]));
                }
            }
        }
        FamilyParams::CD1 { r, d, .. } => {
            let (r, d) = (r as i64, d as i64);
            let s = (d - 1) / 2;
            rules.push(member("R-cDdm0", vec![member_aux(fr, &[s + 1, s, 1, 1], 1)]));
            if d == 3 && a >= 5 {
                rules.push(Some(window(
                    "R-dagger6",
                    vec![aux(&[3, 3, 2, 1], 1, 2, q(3, r + 1)), aux(&[r - 2, r - 3, a - 2, 1], 1, a - 2, q(r - 3, r))],
                )));
            }
        }
        FamilyParams::CD2 { d, .. } => {
            let d = d as i64;
            rules.push(member("R-id", vec![member_aux(fr, &[d, d, 1, 1, d], 1)]));
        }
        FamilyParams::CD2q1 { r, d, .. } => {
            rules.push(Some(character_rule()));
            let (r, d) = (r as i64, d as i64);
            let s = d - 1;
            if s >= 1 {
                rules.push(member("R-d2m", vec![member_aux(fr, &[s + 2, s, 1, 2], 1)]));
            }
            if d == 2 && r >= 5 {
                rules.push(Some(window(
                    "R-dagger7",
                    vec![aux(&[4, 4, 2, 2], 2, 2, q(4, r + 2)), aux(&[r - 2, r - 4, a - 2, 2], 2, a - 2, q(r - 4, r))],
                )));
            }
        }
        FamilyParams::CD2q2 { d, .. } => {
            rules.push(Some(character_rule()));
            let e = 2 * d as i64 + 1;
            rules.push(member("R-zinf", vec![member_aux(fr, &[e, e, 1, 2, e], 1)]));
        }
    }
    rules.into_iter().flatten().collect()
}
