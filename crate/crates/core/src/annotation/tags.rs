use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

macro_rules! penn_tags {
    ($($variant:ident => $s:literal),+ $(,)?) => {
        /// The 45 Penn Treebank part-of-speech tags.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(into = "String", try_from = "String")]
        pub enum PennTag { $($variant),+ }

        impl PennTag {
            pub const ALL: [PennTag; 45] = [$(PennTag::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self { $(PennTag::$variant => $s),+ }
            }
        }

        impl FromStr for PennTag {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($s => Ok(PennTag::$variant),)+
                    // common aliases seen in treebank exports
                    "(" => Ok(PennTag::Lrb),
                    ")" => Ok(PennTag::Rrb),
                    "HYPH" | "NFP" => Ok(PennTag::Colon),
                    "ADD" | "AFX" | "GW" | "XX" => Ok(PennTag::Fw),
                    _ => Err(Error::Data(format!("unknown Penn tag {s:?}"))),
                }
            }
        }
    };
}

penn_tags! {
    Cc => "CC", Cd => "CD", Dt => "DT", Ex => "EX", Fw => "FW", In => "IN", Jj => "JJ",
    Jjr => "JJR", Jjs => "JJS", Ls => "LS", Md => "MD", Nn => "NN", Nns => "NNS", Nnp => "NNP",
    Nnps => "NNPS", Pdt => "PDT", Pos => "POS", Prp => "PRP", PrpS => "PRP$", Rb => "RB",
    Rbr => "RBR", Rbs => "RBS", Rp => "RP", Sym => "SYM", To => "TO", Uh => "UH", Vb => "VB",
    Vbd => "VBD", Vbg => "VBG", Vbn => "VBN", Vbp => "VBP", Vbz => "VBZ", Wdt => "WDT",
    Wp => "WP", WpS => "WP$", Wrb => "WRB", Dollar => "$", Hash => "#", OpenQuote => "``",
    CloseQuote => "''", Lrb => "-LRB-", Rrb => "-RRB-", Comma => ",", Period => ".", Colon => ":",
}

impl PennTag {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<PennTag> {
        PennTag::ALL.get(i).copied()
    }

    pub fn is_noun(self) -> bool {
        matches!(
            self,
            PennTag::Nn | PennTag::Nns | PennTag::Nnp | PennTag::Nnps
        )
    }

    pub fn is_proper(self) -> bool {
        matches!(self, PennTag::Nnp | PennTag::Nnps)
    }

    pub fn is_adjective(self) -> bool {
        matches!(self, PennTag::Jj | PennTag::Jjr | PennTag::Jjs)
    }

    pub fn is_adverb(self) -> bool {
        matches!(self, PennTag::Rb | PennTag::Rbr | PennTag::Rbs)
    }

    pub fn is_verb(self) -> bool {
        matches!(
            self,
            PennTag::Vb | PennTag::Vbd | PennTag::Vbg | PennTag::Vbn | PennTag::Vbp | PennTag::Vbz
        )
    }

    /// Open-class tags: nouns, adjectives, adverbs and verb inflections.
    pub fn is_content(self) -> bool {
        self.is_noun() || self.is_adjective() || self.is_adverb() || self.is_verb()
    }

    pub fn is_punct(self) -> bool {
        matches!(
            self,
            PennTag::OpenQuote
                | PennTag::CloseQuote
                | PennTag::Lrb
                | PennTag::Rrb
                | PennTag::Comma
                | PennTag::Period
                | PennTag::Colon
                | PennTag::Hash
                | PennTag::Dollar
        )
    }
}

impl fmt::Display for PennTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<PennTag> for String {
    fn from(t: PennTag) -> String {
        t.as_str().to_string()
    }
}

impl TryFrom<String> for PennTag {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_set_round_trips() {
        assert_eq!(PennTag::ALL.len(), 45);
        for (i, t) in PennTag::ALL.iter().enumerate() {
            assert_eq!(t.index(), i);
            assert_eq!(t.as_str().parse::<PennTag>().unwrap(), *t);
        }
        assert!("XYZ".parse::<PennTag>().is_err());
    }
}
