//! Axiom identifiers and their defining equations.
//!
//! Every axiom is a list of clauses. A clause is a universally quantified
//! equation `lhs = rhs` over 0, 1 or 2 variables; order facts are stated in
//! their equational form (`a ≤ b` as `a ∨ b = b` or `a ∧ b = a`).
//! Clauses evaluate over possibly partial tables: a lookup of an unset entry
//! makes the instance undefined rather than false, which lets the table
//! enumerator prune on prefixes.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::lattice::Lattice;

/// Marks an unassigned table entry during enumeration.
pub(crate) const UNSET: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    A1,
    A1Dual,
    A2,
    A2Dual,
    A3,
    A3Dual,
    P4,
    P5,
    Cor1,
    Ddag,
    Wdn,
}

impl Axiom {
    pub const ALL: [Axiom; 11] = [
        Axiom::A1,
        Axiom::A1Dual,
        Axiom::A2,
        Axiom::A2Dual,
        Axiom::A3,
        Axiom::A3Dual,
        Axiom::P4,
        Axiom::P5,
        Axiom::Cor1,
        Axiom::Ddag,
        Axiom::Wdn,
    ];

    /// The six defining axioms of a weak dicomplementation.
    pub const DEFINING: [Axiom; 6] = [Axiom::A1, Axiom::A2, Axiom::A3, Axiom::A1Dual, Axiom::A2Dual, Axiom::A3Dual];

    /// Axioms on the weak complementation alone.
    pub const WEAK: [Axiom; 3] = [Axiom::A1, Axiom::A2, Axiom::A3];

    /// Axioms on the dual weak complementation alone.
    pub const DUAL: [Axiom; 3] = [Axiom::A1Dual, Axiom::A2Dual, Axiom::A3Dual];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::A1 => "A1",
            Axiom::A1Dual => "A1'",
            Axiom::A2 => "A2",
            Axiom::A2Dual => "A2'",
            Axiom::A3 => "A3",
            Axiom::A3Dual => "A3'",
            Axiom::P4 => "P4",
            Axiom::P5 => "P5",
            Axiom::Cor1 => "COR1",
            Axiom::Ddag => "DDAG",
            Axiom::Wdn => "WDN",
        }
    }

    /// Human-readable statement, used in text reports.
    pub fn statement(self) -> &'static str {
        match self {
            Axiom::A1 => "x^△△ ≤ x",
            Axiom::A1Dual => "x^▽▽ ≥ x",
            Axiom::A2 => "x ≤ y ⇒ x^△ ≥ y^△",
            Axiom::A2Dual => "x ≤ y ⇒ x^▽ ≥ y^▽",
            Axiom::A3 => "(x∧y) ∨ (x∧y^△) = x",
            Axiom::A3Dual => "(x∨y) ∧ (x∨y^▽) = x",
            Axiom::P4 => "y∨y^△ = 1, 0^△ = 1, y∧y^▽ = 0, 1^▽ = 0, y^▽ ≤ y^△",
            Axiom::P5 => "x^△△△ = x^△ with x ↦ x^△△ a kernel operator; x^▽▽▽ = x^▽ with x ↦ x^▽▽ a closure operator",
            Axiom::Cor1 => "x^△△ = x, x ≤ y ⇒ x^△ ≥ y^△, (x∧y) ∨ (x∧y^△) = x = (x∨y) ∧ (x∨y^△)",
            Axiom::Ddag => "(x∧y) ∨ (x∧y^△) = (x∨y) ∧ (x∨y^△)",
            Axiom::Wdn => "x^△ = x^▽",
        }
    }

    /// Whether any clause reads the dual table.
    pub fn needs_dual(self) -> bool {
        matches!(self, Axiom::A1Dual | Axiom::A2Dual | Axiom::A3Dual | Axiom::Wdn)
    }

    pub(crate) fn clauses(self) -> &'static [Clause] {
        match self {
            Axiom::A1 => &A1,
            Axiom::A1Dual => &A1_DUAL,
            Axiom::A2 => &A2,
            Axiom::A2Dual => &A2_DUAL,
            Axiom::A3 => &A3,
            Axiom::A3Dual => &A3_DUAL,
            Axiom::P4 => &P4,
            Axiom::P5 => &P5,
            Axiom::Cor1 => &COR1,
            Axiom::Ddag => &DDAG,
            Axiom::Wdn => &WDN,
        }
    }

    pub(crate) fn is_compound(self) -> bool {
        self.clauses().len() > 1
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Axiom::ALL
            .into_iter()
            .find(|a| a.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownAxiom(s.to_string()))
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Weak,
    Dual,
    Both,
}

/// Evaluates both sides of a clause at a tuple; `None` while a table entry is unset.
pub(crate) type Eval = fn(&Env<'_>, &[usize]) -> Option<(usize, usize)>;

pub(crate) struct Clause {
    pub name: &'static str,
    pub arity: usize,
    pub side: Side,
    pub eval: Eval,
}

/// Evaluation environment: a lattice plus (possibly partial) tables.
pub(crate) struct Env<'a> {
    pub lat: &'a Lattice,
    pub weak: &'a [usize],
    pub dual: &'a [usize],
}

impl Env<'_> {
    #[inline]
    fn w(&self, x: usize) -> Option<usize> {
        self.weak.get(x).copied().filter(|&v| v != UNSET)
    }
    #[inline]
    fn d(&self, x: usize) -> Option<usize> {
        self.dual.get(x).copied().filter(|&v| v != UNSET)
    }
    #[inline]
    fn m(&self, x: usize, y: usize) -> usize {
        self.lat.meet(x, y)
    }
    #[inline]
    fn j(&self, x: usize, y: usize) -> usize {
        self.lat.join(x, y)
    }
    #[inline]
    fn top(&self) -> usize {
        self.lat.top()
    }
    #[inline]
    fn bot(&self) -> usize {
        self.lat.bottom()
    }

    /// Call `f` on every tuple of the given arity, lexicographically, until it returns `Some`.
    pub fn tuples<T>(&self, arity: usize, mut f: impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
        let n = self.lat.len();
        match arity {
            0 => f(&[]),
            1 => (0..n).find_map(|x| f(&[x])),
            2 => (0..n).find_map(|x| (0..n).find_map(|y| f(&[x, y]))),
            _ => unreachable!("clauses have at most two variables"),
        }
    }

    /// Least failing instance of a clause.
    pub fn first_failure(&self, clause: &Clause) -> Option<(Vec<usize>, usize, usize)> {
        self.tuples(clause.arity, |t| match (clause.eval)(self, t) {
            Some((lhs, rhs)) if lhs != rhs => Some((t.to_vec(), lhs, rhs)),
            _ => None,
        })
    }
}

macro_rules! clause {
    ($name:expr, $arity:expr, $side:ident, |$e:ident, $t:ident| $body:expr) => {
        Clause {
            name: $name,
            arity: $arity,
            side: Side::$side,
            eval: {
                fn eval($e: &Env<'_>, $t: &[usize]) -> Option<(usize, usize)> {
                    $body
                }
                eval
            },
        }
    };
}

static A1: [Clause; 1] = [clause!("x^△△ ∨ x = x", 1, Weak, |e, t| {
    let x = t[0];
    Some((e.j(e.w(e.w(x)?)?, x), x))
})];

static A1_DUAL: [Clause; 1] = [clause!("x^▽▽ ∧ x = x", 1, Dual, |e, t| {
    let x = t[0];
    Some((e.m(e.d(e.d(x)?)?, x), x))
})];

static A2: [Clause; 1] = [clause!("(x∧y)^△ ∧ y^△ = y^△", 2, Weak, |e, t| {
    let (x, y) = (t[0], t[1]);
    let wy = e.w(y)?;
    Some((e.m(e.w(e.m(x, y))?, wy), wy))
})];

static A2_DUAL: [Clause; 1] = [clause!("(x∧y)^▽ ∧ y^▽ = y^▽", 2, Dual, |e, t| {
    let (x, y) = (t[0], t[1]);
    let dy = e.d(y)?;
    Some((e.m(e.d(e.m(x, y))?, dy), dy))
})];

static A3: [Clause; 1] = [clause!("(x∧y) ∨ (x∧y^△) = x", 2, Weak, |e, t| {
    let (x, y) = (t[0], t[1]);
    Some((e.j(e.m(x, y), e.m(x, e.w(y)?)), x))
})];

static A3_DUAL: [Clause; 1] = [clause!("(x∨y) ∧ (x∨y^▽) = x", 2, Dual, |e, t| {
    let (x, y) = (t[0], t[1]);
    Some((e.m(e.j(x, y), e.j(x, e.d(y)?)), x))
})];

static P4: [Clause; 5] = [
    clause!("y ∨ y^△ = 1", 1, Weak, |e, t| Some((e.j(t[0], e.w(t[0])?), e.top()))),
    clause!("0^△ = 1", 0, Weak, |e, _t| Some((e.w(e.bot())?, e.top()))),
    clause!("y ∧ y^▽ = 0", 1, Dual, |e, t| Some((e.m(t[0], e.d(t[0])?), e.bot()))),
    clause!("1^▽ = 0", 0, Dual, |e, _t| Some((e.d(e.top())?, e.bot()))),
    clause!("y^▽ ∨ y^△ = y^△", 1, Both, |e, t| {
        let wy = e.w(t[0])?;
        Some((e.j(e.d(t[0])?, wy), wy))
    }),
];

static P5: [Clause; 8] = [
    clause!("x^△△△ = x^△", 1, Weak, |e, t| {
        let wx = e.w(t[0])?;
        Some((e.w(e.w(wx)?)?, wx))
    }),
    clause!("(x∧y)^△△ ∧ y^△△ = (x∧y)^△△", 2, Weak, |e, t| {
        let k = e.w(e.w(e.m(t[0], t[1]))?)?;
        Some((e.m(k, e.w(e.w(t[1])?)?), k))
    }),
    clause!("x^△△△△ = x^△△", 1, Weak, |e, t| {
        let k = e.w(e.w(t[0])?)?;
        Some((e.w(e.w(k)?)?, k))
    }),
    clause!("x^△△ ∨ x = x", 1, Weak, |e, t| Some((e.j(e.w(e.w(t[0])?)?, t[0]), t[0]))),
    clause!("x^▽▽▽ = x^▽", 1, Dual, |e, t| {
        let dx = e.d(t[0])?;
        Some((e.d(e.d(dx)?)?, dx))
    }),
    clause!("(x∧y)^▽▽ ∧ y^▽▽ = (x∧y)^▽▽", 2, Dual, |e, t| {
        let c = e.d(e.d(e.m(t[0], t[1]))?)?;
        Some((e.m(c, e.d(e.d(t[1])?)?), c))
    }),
    clause!("x^▽▽▽▽ = x^▽▽", 1, Dual, |e, t| {
        let c = e.d(e.d(t[0])?)?;
        Some((e.d(e.d(c)?)?, c))
    }),
    clause!("x^▽▽ ∧ x = x", 1, Dual, |e, t| Some((e.m(e.d(e.d(t[0])?)?, t[0]), t[0]))),
];

static COR1: [Clause; 4] = [
    clause!("x^△△ = x", 1, Weak, |e, t| Some((e.w(e.w(t[0])?)?, t[0]))),
    clause!("(x∧y)^△ ∧ y^△ = y^△", 2, Weak, |e, t| {
        let wy = e.w(t[1])?;
        Some((e.m(e.w(e.m(t[0], t[1]))?, wy), wy))
    }),
    clause!("(x∧y) ∨ (x∧y^△) = x", 2, Weak, |e, t| {
        let (x, y) = (t[0], t[1]);
        Some((e.j(e.m(x, y), e.m(x, e.w(y)?)), x))
    }),
    clause!("(x∨y) ∧ (x∨y^△) = x", 2, Weak, |e, t| {
        let (x, y) = (t[0], t[1]);
        Some((e.m(e.j(x, y), e.j(x, e.w(y)?)), x))
    }),
];

static DDAG: [Clause; 1] = [clause!("(x∧y) ∨ (x∧y^△) = (x∨y) ∧ (x∨y^△)", 2, Weak, |e, t| {
    let (x, y) = (t[0], t[1]);
    let wy = e.w(y)?;
    Some((e.j(e.m(x, y), e.m(x, wy)), e.m(e.j(x, y), e.j(x, wy))))
})];

static WDN: [Clause; 1] = [clause!("x^△ = x^▽", 1, Both, |e, t| Some((e.w(t[0])?, e.d(t[0])?)))];
