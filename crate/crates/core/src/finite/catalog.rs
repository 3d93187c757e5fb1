//! Built-in catalog of small groups given by presentations.
//!
//! Names: `C<n>` (n ≤ 64), `D<n>` (dihedral of order 2n, n ≤ 16), `S3`,
//! `S4`, `A4`, `Q8`, `V4`, and `SG<order>_<id>` for every group of order at
//! most 16, numbered as in the small groups library.

use super::coset::DEFAULT_COSET_LIMIT;
use super::group::{realize, FinSubgroup, FiniteGroup};
use crate::error::{Error, Result};
use crate::presentation::{parse_presentation, Presentation};

/// `(name, presentation, order)` for every group of order ≤ 16.
const SMALL_GROUPS: &[(&str, &str, usize)] = &[
    ("SG1_1", "gens: a | rels: a", 1),
    ("SG2_1", "gens: a | rels: a^2", 2),
    ("SG3_1", "gens: a | rels: a^3", 3),
    ("SG4_1", "gens: a | rels: a^4", 4),
    ("SG4_2", "gens: a, b | rels: a^2, b^2, [a,b]", 4),
    ("SG5_1", "gens: a | rels: a^5", 5),
    ("SG6_1", "gens: a, b | rels: a^3, b^2, (b*a)^2", 6),
    ("SG6_2", "gens: a | rels: a^6", 6),
    ("SG7_1", "gens: a | rels: a^7", 7),
    ("SG8_1", "gens: a | rels: a^8", 8),
    ("SG8_2", "gens: a, b | rels: a^4, b^2, [a,b]", 8),
    ("SG8_3", "gens: a, b | rels: a^4, b^2, (b*a)^2", 8),
    ("SG8_4", "gens: a, b | rels: a^4, a^2*b^-2, b*a*b^-1*a", 8),
    ("SG8_5", "gens: a, b, c | rels: a^2, b^2, c^2, [a,b], [a,c], [b,c]", 8),
    ("SG9_1", "gens: a | rels: a^9", 9),
    ("SG9_2", "gens: a, b | rels: a^3, b^3, [a,b]", 9),
    ("SG10_1", "gens: a, b | rels: a^5, b^2, (b*a)^2", 10),
    ("SG10_2", "gens: a | rels: a^10", 10),
    ("SG11_1", "gens: a | rels: a^11", 11),
    ("SG12_1", "gens: a, b | rels: a^6, b^2*a^-3, b*a*b^-1*a", 12),
    ("SG12_2", "gens: a | rels: a^12", 12),
    ("SG12_3", "gens: a, b | rels: a^2, b^3, (a*b)^3", 12),
    ("SG12_4", "gens: a, b | rels: a^6, b^2, (b*a)^2", 12),
    ("SG12_5", "gens: a, b | rels: a^6, b^2, [a,b]", 12),
    ("SG13_1", "gens: a | rels: a^13", 13),
    ("SG14_1", "gens: a, b | rels: a^7, b^2, (b*a)^2", 14),
    ("SG14_2", "gens: a | rels: a^14", 14),
    ("SG15_1", "gens: a | rels: a^15", 15),
    ("SG16_1", "gens: a | rels: a^16", 16),
    ("SG16_2", "gens: a, b | rels: a^4, b^4, [a,b]", 16),
    ("SG16_3", "gens: a, b, c | rels: a^4, b^2, c^2, [a,b], [b,c], c*a*c^-1*b^-1*a^-1", 16),
    ("SG16_4", "gens: a, b | rels: a^4, b^4, b*a*b^-1*a", 16),
    ("SG16_5", "gens: a, b | rels: a^8, b^2, [a,b]", 16),
    ("SG16_6", "gens: a, b | rels: a^8, b^2, b*a*b^-1*a^-5", 16),
    ("SG16_7", "gens: a, b | rels: a^8, b^2, (b*a)^2", 16),
    ("SG16_8", "gens: a, b | rels: a^8, b^2, b*a*b^-1*a^-3", 16),
    ("SG16_9", "gens: a, b | rels: a^8, a^4*b^-2, b*a*b^-1*a", 16),
    ("SG16_10", "gens: a, b, c | rels: a^4, b^2, c^2, [a,b], [a,c], [b,c]", 16),
    ("SG16_11", "gens: a, b, c | rels: a^4, b^2, (b*a)^2, c^2, [a,c], [b,c]", 16),
    ("SG16_12", "gens: a, b, c | rels: a^4, a^2*b^-2, b*a*b^-1*a, c^2, [a,c], [b,c]", 16),
    ("SG16_13", "gens: a, b, c | rels: a^4, b^2, c^2, [a,b], [a,c], c*b*c^-1*b^-1*a^-2", 16),
    ("SG16_14", "gens: a, b, c, d | rels: a^2, b^2, c^2, d^2, [a,b], [a,c], [a,d], [b,c], [b,d], [c,d]", 16),
];

const ALIASES: &[(&str, &str)] = &[
    ("V4", "SG4_2"),
    ("K4", "SG4_2"),
    ("KLEIN", "SG4_2"),
    ("S3", "SG6_1"),
    ("Q8", "SG8_4"),
    ("A4", "SG12_3"),
    ("DIC3", "SG12_1"),
    ("Q16", "SG16_9"),
    ("SD16", "SG16_8"),
    ("M16", "SG16_6"),
];

fn cyclic(n: usize) -> String {
    format!("gens: a | rels: a^{n}")
}

fn dihedral(n: usize) -> String {
    // order 2n; D1 = C2, D2 = V4
    format!("gens: r, s | rels: r^{n}, s^2, (s*r)^2")
}

/// Presentation for a catalog name, together with the expected order.
pub fn catalog_presentation(name: &str) -> Result<(Presentation, usize)> {
    let key = name.trim().to_ascii_uppercase();
    let key = ALIASES.iter().find(|(a, _)| *a == key).map(|(_, k)| k.to_string()).unwrap_or(key);
    if let Some((_, text, order)) = SMALL_GROUPS.iter().find(|(n, _, _)| n.eq_ignore_ascii_case(&key)) {
        return Ok((parse_presentation(text)?, *order));
    }
    if key == "S4" {
        return Ok((parse_presentation("gens: a, b | rels: a^2, b^3, (a*b)^4")?, 24));
    }
    let parse_n = |s: &str| s.parse::<usize>().ok();
    if let Some(n) = key.strip_prefix('C').and_then(parse_n) {
        if (1..=64).contains(&n) {
            return Ok((parse_presentation(&cyclic(n))?, n));
        }
    }
    if let Some(n) = key.strip_prefix('D').and_then(parse_n) {
        if (1..=16).contains(&n) {
            return Ok((parse_presentation(&dihedral(n))?, 2 * n));
        }
    }
    Err(Error::UnknownGroup(name.to_string()))
}

/// Realizes a catalog group.
pub fn catalog(name: &str) -> Result<FiniteGroup> {
    let (p, order) = catalog_presentation(name)?;
    let g = realize(&p, DEFAULT_COSET_LIMIT)?;
    debug_assert_eq!(g.order(), order);
    Ok(g)
}

/// Every catalog name, each isomorphism type listed once where possible.
pub fn catalog_names() -> Vec<String> {
    let mut out: Vec<String> = SMALL_GROUPS.iter().map(|(n, _, _)| n.to_string()).collect();
    out.extend((17..=64).map(|n| format!("C{n}")));
    out.extend((9..=16).map(|n| format!("D{n}")));
    out.push("S4".into());
    out
}

/// Catalog names whose group order is at most `max_order`.
pub fn catalog_names_up_to(max_order: usize) -> Vec<String> {
    catalog_names()
        .into_iter()
        .filter(|n| catalog_presentation(n).map(|(_, o)| o <= max_order).unwrap_or(false))
        .collect()
}

/// Looks up a named subgroup: `G`/`whole`, `1`/`trivial`, `center`,
/// `derived`, `A3` (in S3), `A4`/`V4` (in S4), `rotations` (dihedral),
/// or `N<k>` for the k-th normal subgroup in the sorted list.
pub fn named_subgroup(group_name: &str, g: &FiniteGroup, sub: &str) -> Result<FinSubgroup> {
    let key = sub.trim().to_ascii_lowercase();
    let gname = group_name.trim().to_ascii_uppercase();
    match key.as_str() {
        "g" | "whole" => return Ok(g.whole()),
        "1" | "trivial" => return Ok(g.trivial()),
        "center" | "centre" | "z" => return Ok(g.center()),
        "derived" => return Ok(g.derived()),
        _ => {}
    }
    if let Some(k) = key.strip_prefix('n').and_then(|s| s.parse::<usize>().ok()) {
        let all = g.normal_subgroups();
        return all.get(k).cloned().ok_or_else(|| Error::InvalidArgument(format!("no normal subgroup N{k} (only {})", all.len())));
    }
    let by_order = |order: usize| {
        g.normal_subgroups()
            .into_iter()
            .find(|s| s.order() == order)
            .ok_or_else(|| Error::InvalidArgument(format!("no normal subgroup of order {order}")))
    };
    match (gname.as_str(), key.as_str()) {
        ("S3" | "SG6_1" | "D3", "a3") => g.derived().order().eq(&3).then(|| g.derived()).ok_or_else(|| Error::InvalidArgument("A3".into())),
        ("S4", "a4") => by_order(12),
        ("S4", "v4") => by_order(4),
        (_, "rotations") if gname.starts_with('D') => Ok(g.generate(&[g.gen_images()[0]])),
        _ => Err(Error::InvalidArgument(format!("unknown subgroup name `{sub}` for {group_name}"))),
    }
}
