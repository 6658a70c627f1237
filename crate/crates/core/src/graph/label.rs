use std::fmt;
use std::str::FromStr;

/// What a node is in a lower-bound construction.
///
/// The declaration order is the primary sort key of [`NodeLabel`], so it is
/// part of the canonical (serialized) node order and must not be reordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    /// Member of one of the input-indexed sets (`a^i`, `b^i`, `a_1^i`, ...).
    Set,
    /// Bit-node for a 0 bit (`f_S^h`).
    BitF,
    /// Bit-node for a 1 bit (`t_S^h`).
    BitT,
    /// Hub joined to all members of its set (`c_S`).
    Center,
    /// Hub joined to the bit-nodes of its side (`cbar_S`).
    BarCenter,
    /// Interior node of a stretched path.
    Path,
    /// Pendant path hanging off the radius construction (`w^0..w^2`).
    W,
    /// First node of a per-member pendant path (`sbar^i`).
    Bar,
    /// Second node of a per-member pendant path (`sbarbar^i`).
    DoubleBar,
    /// Color-forcing clique node (`c_a^i`, `c_b^i`).
    Color,
}

impl Role {
    const ALL: [Role; 10] = [
        Role::Set,
        Role::BitF,
        Role::BitT,
        Role::Center,
        Role::BarCenter,
        Role::Path,
        Role::W,
        Role::Bar,
        Role::DoubleBar,
        Role::Color,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Role::Set => "set",
            Role::BitF => "f",
            Role::BitT => "t",
            Role::Center => "center",
            Role::BarCenter => "barcenter",
            Role::Path => "path",
            Role::W => "w",
            Role::Bar => "bar",
            Role::DoubleBar => "dbar",
            Role::Color => "color",
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Role> {
        Role::ALL.get(code as usize).copied()
    }
}

/// Which named set a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SetTag {
    None,
    A,
    B,
    A1,
    A2,
    B1,
    B2,
}

impl SetTag {
    const ALL: [SetTag; 7] = [
        SetTag::None,
        SetTag::A,
        SetTag::B,
        SetTag::A1,
        SetTag::A2,
        SetTag::B1,
        SetTag::B2,
    ];

    pub fn token(self) -> &'static str {
        match self {
            SetTag::None => "-",
            SetTag::A => "A",
            SetTag::B => "B",
            SetTag::A1 => "A1",
            SetTag::A2 => "A2",
            SetTag::B1 => "B1",
            SetTag::B2 => "B2",
        }
    }

    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<SetTag> {
        SetTag::ALL.get(code as usize).copied()
    }

    /// True for the sets that live on Alice's side in every construction.
    pub fn is_alice(self) -> bool {
        matches!(self, SetTag::A | SetTag::A1 | SetTag::A2)
    }
}

/// Structured node identity.
///
/// Ordering is lexicographic over `(role, set, copy, index, bit)`, which makes
/// the node order of every generated graph deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeLabel {
    pub role: Role,
    pub set: SetTag,
    /// Copy index for constructions that replicate a whole graph; 0 otherwise.
    pub copy: u16,
    pub index: u32,
    /// Bit position for bit-nodes, position along the path for path nodes.
    pub bit: u32,
}

impl NodeLabel {
    pub const fn new(role: Role, set: SetTag, index: u32) -> NodeLabel {
        NodeLabel {
            role,
            set,
            copy: 0,
            index,
            bit: 0,
        }
    }

    pub const fn member(set: SetTag, index: u32) -> NodeLabel {
        NodeLabel::new(Role::Set, set, index)
    }

    pub const fn bit_f(set: SetTag, bit: u32) -> NodeLabel {
        NodeLabel {
            role: Role::BitF,
            set,
            copy: 0,
            index: 0,
            bit,
        }
    }

    pub const fn bit_t(set: SetTag, bit: u32) -> NodeLabel {
        NodeLabel {
            role: Role::BitT,
            set,
            copy: 0,
            index: 0,
            bit,
        }
    }

    pub const fn center(set: SetTag) -> NodeLabel {
        NodeLabel::new(Role::Center, set, 0)
    }

    pub const fn bar_center(set: SetTag) -> NodeLabel {
        NodeLabel::new(Role::BarCenter, set, 0)
    }

    pub const fn color(set: SetTag, index: u32) -> NodeLabel {
        NodeLabel::new(Role::Color, set, index)
    }

    pub const fn with_copy(mut self, copy: u16) -> NodeLabel {
        self.copy = copy;
        self
    }

    pub const fn with_bit(mut self, bit: u32) -> NodeLabel {
        self.bit = bit;
        self
    }

    /// Whitespace-free token used by the text formats: `role:set:copy:index:bit`.
    pub fn token(&self) -> String {
        format!(
            "{}:{}:{}:{}:{}",
            self.role.token(),
            self.set.token(),
            self.copy,
            self.index,
            self.bit
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid node label `{token}`: {reason}")]
pub struct LabelParseError {
    pub token: String,
    pub reason: &'static str,
}

impl FromStr for NodeLabel {
    type Err = LabelParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| LabelParseError {
            token: s.to_owned(),
            reason,
        };
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 5 {
            return Err(err("expected five `:`-separated fields"));
        }
        let role = Role::ALL
            .iter()
            .copied()
            .find(|r| r.token() == parts[0])
            .ok_or_else(|| err("unknown role"))?;
        let set = SetTag::ALL
            .iter()
            .copied()
            .find(|t| t.token() == parts[1])
            .ok_or_else(|| err("unknown set tag"))?;
        let copy = parts[2].parse().map_err(|_| err("bad copy index"))?;
        let index = parts[3].parse().map_err(|_| err("bad index"))?;
        let bit = parts[4].parse().map_err(|_| err("bad bit index"))?;
        Ok(NodeLabel {
            role,
            set,
            copy,
            index,
            bit,
        })
    }
}

/// Mathematical rendering, e.g. `a^3`, `f_A1^0`, `cbar_B`; used in diagnostics.
impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = if self.set.is_alice() { "a" } else { "b" };
        let sub = match self.set {
            SetTag::A1 | SetTag::B1 => "_1",
            SetTag::A2 | SetTag::B2 => "_2",
            _ => "",
        };
        match self.role {
            Role::Set => write!(f, "{letter}{sub}^{}", self.index)?,
            Role::BitF => write!(f, "f_{}^{}", self.set.token(), self.bit)?,
            Role::BitT => write!(f, "t_{}^{}", self.set.token(), self.bit)?,
            Role::Center => write!(f, "c_{}", self.set.token())?,
            Role::BarCenter => write!(f, "cbar_{}", self.set.token())?,
            Role::Path => write!(f, "p_{}[{}.{}]", self.set.token(), self.index, self.bit)?,
            Role::W => write!(f, "w^{}", self.index)?,
            Role::Bar => write!(f, "{letter}{sub}bar^{}", self.index)?,
            Role::DoubleBar => write!(f, "{letter}{sub}dbar^{}", self.index)?,
            Role::Color => write!(f, "c_{letter}^{}", self.index)?,
        }
        if self.copy != 0 {
            write!(f, "@{}", self.copy)?;
        }
        Ok(())
    }
}
