//! Naive, self-contained evaluation of the scoring formulas over hand-copied
//! reference tables. Shares no code with the library.

#![allow(dead_code, clippy::manual_clamp, clippy::needless_range_loop)]

pub const SUBS: usize = 7;
/// Sub-property index ranges of faithfulness, robustness, complexity.
pub const CATEGORIES: [(&str, [usize; 3], usize); 3] = [
    ("faithfulness", [0, 1, 2], 3),
    ("robustness", [3, 4, 0], 2),
    ("complexity", [5, 6, 0], 2),
];

pub struct OracleMethod {
    pub name: &'static str,
    pub raw: [u32; SUBS],
    pub local: bool,
    pub global: bool,
    pub ex_ante: bool,
    pub ex_post: bool,
}

pub struct OracleRegulation {
    pub id: &'static str,
    /// 'M' mandatory, 'O' optional, 'P' partial, 'X' not required
    pub marks: [char; SUBS],
    pub local: bool,
    pub global: bool,
    pub ex_ante: bool,
    pub ex_post: bool,
}

const fn m(name: &'static str, raw: [u32; SUBS], scope: u8, stage: u8) -> OracleMethod {
    OracleMethod {
        name,
        raw,
        local: scope & 1 != 0,
        global: scope & 2 != 0,
        ex_ante: stage & 1 != 0,
        ex_post: stage & 2 != 0,
    }
}

pub const METHODS: [OracleMethod; 10] = [
    m("Decision Trees", [2, 3, 3, 1, 2, 3, 5], 3, 3),
    m("RuleFit", [3, 3, 4, 3, 3, 2, 4], 3, 3),
    m("RuleSHAP", [4, 4, 4, 3, 3, 3, 4], 3, 3),
    m("PDP", [3, 3, 3, 4, 3, 2, 4], 2, 1),
    m("ICE", [3, 4, 2, 3, 3, 2, 4], 3, 3),
    m("LIME", [2, 2, 2, 1, 1, 3, 2], 1, 2),
    m("SHAP", [5, 5, 3, 4, 4, 3, 3], 3, 3),
    m("Anchors", [4, 3, 3, 1, 3, 5, 3], 1, 2),
    m("CEM", [5, 3, 4, 1, 4, 4, 3], 1, 2),
    m("DiCE", [5, 3, 3, 1, 4, 4, 3], 1, 2),
];

pub const REGULATIONS: [OracleRegulation; 3] = [
    OracleRegulation {
        id: "art86",
        marks: ['M', 'M', 'X', 'M', 'P', 'M', 'X'],
        local: true,
        global: false,
        ex_ante: false,
        ex_post: true,
    },
    OracleRegulation {
        id: "art13-14",
        marks: ['O', 'M', 'O', 'M', 'M', 'X', 'X'],
        local: true,
        global: true,
        ex_ante: true,
        ex_post: true,
    },
    OracleRegulation {
        id: "art11-annex4",
        marks: ['M', 'M', 'M', 'M', 'M', 'X', 'M'],
        local: false,
        global: true,
        ex_ante: true,
        ex_post: false,
    },
];

pub fn strength(mark: char) -> f64 {
    if mark == 'M' {
        1.0
    } else if mark == 'O' {
        0.75
    } else if mark == 'P' {
        0.5
    } else {
        0.0
    }
}

pub fn shifted(mark: char, delta: f64) -> f64 {
    let mut l = strength(mark) + delta;
    if l < 0.0 {
        l = 0.0;
    }
    if l > 1.0 {
        l = 1.0;
    }
    l
}

pub fn category_required(r: &OracleRegulation, c: usize) -> bool {
    let (_, subs, n) = CATEGORIES[c];
    let mut any = false;
    for k in 0..n {
        if r.marks[subs[k]] != 'X' {
            any = true;
        }
    }
    any
}

/// Weighted mean of raw/5 over every sub-property of category `c`.
pub fn weight(a: &OracleMethod, r: &OracleRegulation, c: usize, delta: f64) -> f64 {
    let (_, subs, n) = CATEGORIES[c];
    let mut top = 0.0;
    let mut bottom = 0.0;
    for k in 0..n {
        let s = subs[k];
        let l = shifted(r.marks[s], delta);
        top += l * (a.raw[s] as f64 / 5.0);
        bottom += l;
    }
    top / bottom
}

pub fn fits(a: &OracleMethod, r: &OracleRegulation) -> bool {
    let scope = (a.local && r.local) || (a.global && r.global);
    let stage = (a.ex_ante && r.ex_ante) || (a.ex_post && r.ex_post);
    scope && stage
}

pub fn overall(a: &OracleMethod, r: &OracleRegulation, delta: f64) -> f64 {
    if !fits(a, r) {
        return 0.0;
    }
    let mut total = 0.0;
    let mut count = 0;
    for c in 0..3 {
        if category_required(r, c) {
            total += weight(a, r, c, delta);
            count += 1;
        }
    }
    total / count as f64
}
