//! Named classes of the two ambient surface models.

use std::cmp::Ordering;
use std::fmt;

/// A divisor name on the curve; `K_C` sorts after ordinary names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Name(pub String);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(s.to_string())
    }

    pub fn canonical() -> Name {
        Name::new("K_C")
    }

    pub fn is_canonical(&self) -> bool {
        self.0 == "K_C"
    }
}

impl Ord for Name {
    fn cmp(&self, o: &Name) -> Ordering {
        (self.is_canonical(), &self.0).cmp(&(o.is_canonical(), &o.0))
    }
}

impl PartialOrd for Name {
    fn partial_cmp(&self, o: &Name) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Index of an exceptional class: a single curve or the sum of all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Idx {
    One(u32),
    All,
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Idx::One(i) => write!(f, "{i}"),
            Idx::All => f.write_str("*"),
        }
    }
}

/// Grade-1 classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lin {
    D(Name),
    Delta0,
    /// `a1 x C2` on the product model.
    A1xC2,
    /// `C1 x a2` on the product model.
    C1xA2,
    F(Idx),
    E(Idx),
}

impl Lin {
    pub fn is_product_model(&self) -> bool {
        matches!(self, Lin::A1xC2 | Lin::C1xA2 | Lin::F(_))
    }

    pub fn is_symmetric_model(&self) -> bool {
        matches!(self, Lin::D(_) | Lin::Delta0)
    }
}

impl fmt::Display for Lin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lin::D(n) => write!(f, "D[{n}]"),
            Lin::Delta0 => f.write_str("Delta0"),
            Lin::A1xC2 => f.write_str("A1xC2"),
            Lin::C1xA2 => f.write_str("C1xA2"),
            Lin::F(i) => write!(f, "F[{i}]"),
            Lin::E(i) => write!(f, "E[{i}]"),
        }
    }
}

/// Grade-2 basis classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Top {
    Pair2(Name),
    Delta(Name),
    /// `D_a . D_b` for distinct names, sorted.
    Cross(Name, Name),
    Delta0Sq,
    Pt,
}

impl fmt::Display for Top {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Top::Pair2(n) => write!(f, "pair2[{n}]"),
            Top::Delta(n) => write!(f, "delta[{n}]"),
            Top::Cross(a, b) => write!(f, "D[{a}]*D[{b}]"),
            Top::Delta0Sq => f.write_str("Delta0*Delta0"),
            Top::Pt => f.write_str("pt"),
        }
    }
}

/// Any symbol the parser accepts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Lin(Lin),
    Top(Top),
    /// The hyperplane class restricted to the residue surface.
    XiS,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Lin(l) => l.fmt(f),
            Symbol::Top(t) => t.fmt(f),
            Symbol::XiS => f.write_str("xS"),
        }
    }
}
