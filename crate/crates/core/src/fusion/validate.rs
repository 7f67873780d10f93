//! Post-hoc validation of fusion tables.
//!
//! Written against the raw table data only, with plain loops; it shares no
//! logic with propagation or search so that a bug there cannot hide here.

use serde::{Deserialize, Serialize};

use super::table::{CharId, FusionTable};
use crate::rules::RuleId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: RuleId,
    pub detail: String,
}

/// Every invariant checked on every defined entry; rows in `focus` must be
/// fully defined. An empty result means the table is valid.
pub fn validate(table: &FusionTable, focus: &[(CharId, CharId)]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |rule: RuleId, detail: String| out.push(Violation { rule, detail });
    let n = table.len();
    let g = table.grouplike_count();
    let mul = table.group().table();
    let deg = |x: CharId| table.degree(x);
    let val = |a: CharId, b: CharId, c: CharId| {
        let d = table.entry(a, b, c);
        if d.lo == d.hi {
            Some(d.lo)
        } else {
            None
        }
    };

    // The group of group-likes.
    for a in 0..g {
        if mul[0][a] != a || mul[a][0] != a {
            bad(RuleId::GroupAction, format!("0 is not an identity at {a}"));
        }
        if !(0..g).any(|b| mul[a][b] == 0) {
            bad(RuleId::GroupAction, format!("{a} has no inverse"));
        }
        for b in 0..g {
            for c in 0..g {
                if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                    bad(RuleId::GroupAction, format!("({a}{b}){c} != {a}({b}{c})"));
                }
            }
        }
    }
    for a in 0..g {
        if deg(a) != 1 {
            bad(RuleId::GroupAction, format!("group-like {a} has degree {}", deg(a)));
        }
    }

    // Duality.
    let mut dual = vec![0; n];
    for x in 0..n {
        match table.dual(x) {
            None => bad(RuleId::DualityMultiplicity, format!("dual of {x} is unknown")),
            Some(y) => dual[x] = y,
        }
    }
    if !out.is_empty() {
        return out;
    }
    for x in 0..n {
        let y = dual[x];
        if dual[y] != x {
            out.push(Violation { rule: RuleId::DualityMultiplicity, detail: format!("dual is not an involution at {x}") });
        }
        if deg(y) != deg(x) {
            out.push(Violation { rule: RuleId::DualityMultiplicity, detail: format!("dual of {x} changes degree") });
        }
        if x < g && mul[x][y] != 0 {
            out.push(Violation { rule: RuleId::DualityMultiplicity, detail: format!("dual of group-like {x} is not its inverse") });
        }
    }
    let mut bad = |rule: RuleId, detail: String| out.push(Violation { rule, detail });

    // Left action of group-likes, read from the action records.
    let mut act = vec![vec![usize::MAX; n]; g];
    for h in 0..g {
        for x in 0..n {
            match table.act(h, x) {
                Some(y) => act[h][x] = y,
                None => bad(RuleId::GroupAction, format!("action of {h} on {x} is unknown")),
            }
        }
    }
    let act_known = act.iter().all(|r| r.iter().all(|&y| y != usize::MAX));
    if act_known {
        for h in 0..g {
            let mut hit = vec![false; n];
            for x in 0..n {
                let y = act[h][x];
                if deg(y) != deg(x) {
                    bad(RuleId::GroupAction, format!("{h} moves {x} to a different degree"));
                }
                if hit[y] {
                    bad(RuleId::GroupAction, format!("{h} is not injective"));
                }
                hit[y] = true;
                if x < g && y != mul[h][x] {
                    bad(RuleId::GroupAction, format!("{h} acts on group-like {x} against the group law"));
                }
                for k in 0..g {
                    if act[mul[h][k]][x] != act[h][act[k][x]] {
                        bad(RuleId::GroupAction, format!("action is not compatible with {h}*{k} on {x}"));
                    }
                }
            }
        }
        for x in 0..n {
            let stab: Vec<CharId> = (0..g).filter(|&h| act[h][x] == x).collect();
            if (deg(x) * deg(x)) % stab.len() as u64 != 0 {
                bad(RuleId::StabilizerDividesDegsq, format!("|G[{x}]| = {} does not divide deg^2", stab.len()));
            }
            for h in 0..g {
                if let Some(v) = val(x, dual[x], h) {
                    let expect = (act[h][x] == x) as u32;
                    if v != expect {
                        bad(RuleId::GrouplikeMultiplicity, format!("m({h}, {x}*{}) = {v} but stabilizer says {expect}", dual[x]));
                    }
                }
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let Some(v) = val(a, b, c) else { continue };
                if a == 0 && v != (b == c) as u32 {
                    bad(RuleId::CounitMultiplicity, format!("m({c}, 0*{b}) = {v}"));
                }
                if b == 0 && v != (a == c) as u32 {
                    bad(RuleId::CounitMultiplicity, format!("m({c}, {a}*0) = {v}"));
                }
                if c == 0 && v != (b == dual[a]) as u32 {
                    bad(RuleId::CounitMultiplicity, format!("m(0, {a}*{b}) = {v}"));
                }
                if c < g {
                    if deg(a) != deg(b) && v != 0 {
                        bad(RuleId::GrouplikeMultiplicity, format!("m({c}, {a}*{b}) = {v} across degrees"));
                    }
                    if v > 1 {
                        bad(RuleId::GrouplikeMultiplicity, format!("m({c}, {a}*{b}) = {v} > 1"));
                    }
                    // b must be a* c, the unique constituent of a* c.
                    let right: Vec<CharId> = (0..n).filter(|&w| val(dual[a], c, w) == Some(1)).collect();
                    if right.len() == 1 && (v == 1) != (b == right[0]) {
                        bad(RuleId::GrouplikeMultiplicity, format!("m({c}, {a}*{b}) = {v} but {a}* {c} = {}", right[0]));
                    }
                }
                if a < g && act_known {
                    let expect = (act[a][b] == c) as u32;
                    if v != expect {
                        bad(RuleId::GrouplikeMultiplicity, format!("m({c}, {a}*{b}) = {v} but {a}*{b} = {}", act[a][b]));
                    }
                }
                for (x, y, z, rule) in [
                    (c, dual[b], a, RuleId::FrobeniusReciprocity),
                    (b, dual[c], dual[a], RuleId::FrobeniusReciprocity),
                    (dual[b], dual[a], dual[c], RuleId::DualityMultiplicity),
                ] {
                    if let Some(w) = val(x, y, z) {
                        if w != v {
                            bad(rule, format!("m({c}, {a}*{b}) = {v} but m({z}, {x}*{y}) = {w}"));
                        }
                    }
                }
                if act_known {
                    for h in 0..g {
                        if let Some(w) = val(act[h][a], b, act[h][c]) {
                            if w != v {
                                bad(RuleId::GrouplikeTranslation, format!("translating m({c}, {a}*{b}) by {h} changes it"));
                            }
                        }
                    }
                }
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            let row: Option<Vec<u32>> = (0..n).map(|c| val(a, b, c)).collect();
            match row {
                Some(row) => {
                    let total: u64 = row.iter().enumerate().map(|(c, &m)| m as u64 * deg(c)).sum();
                    if total != deg(a) * deg(b) {
                        bad(RuleId::DegreeAccounting, format!("{a}*{b} has degree {total}, expected {}", deg(a) * deg(b)));
                    }
                }
                None => {
                    if focus.contains(&(a, b)) {
                        bad(RuleId::DegreeAccounting, format!("focus product {a}*{b} is not fully decomposed"));
                    }
                }
            }
        }
    }

    // Quotients spanned by the group-likes and one more character.
    let dim = table.algebra_type().dim();
    'seeds: for x in g..n {
        let mut inside = vec![false; n];
        let mut members: Vec<CharId> = (0..g).collect();
        members.push(x);
        for &m in &members {
            inside[m] = true;
        }
        loop {
            let before = members.len();
            for i in 0..before {
                let y = dual[members[i]];
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
                for j in 0..before {
                    for c in 0..n {
                        match val(members[i], members[j], c) {
                            None => continue 'seeds,
                            Some(0) => {}
                            Some(_) => {
                                if !inside[c] {
                                    inside[c] = true;
                                    members.push(c);
                                }
                            }
                        }
                    }
                }
            }
            if members.len() == before {
                break;
            }
        }
        let d: u64 = members.iter().map(|&m| deg(m) * deg(m)).sum();
        if dim % d != 0 {
            bad(RuleId::StandardSubalgebraClosure, format!("closure of group-likes and {x} has dimension {d}"));
        }
    }
    out
}
