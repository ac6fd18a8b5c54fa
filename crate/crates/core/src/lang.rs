use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Object languages known to the framework.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Lang {
    #[serde(rename = "java")]
    Java,
    #[serde(rename = "py")]
    Py,
    #[serde(rename = "cpp")]
    Cpp,
}

impl Lang {
    pub const ALL: [Lang; 3] = [Lang::Java, Lang::Py, Lang::Cpp];

    pub fn tag(self) -> &'static str {
        match self {
            Lang::Java => "java",
            Lang::Py => "py",
            Lang::Cpp => "cpp",
        }
    }

    /// Source file extension used by the corpus layout.
    pub fn extension(self) -> &'static str {
        self.tag()
    }
}

impl fmt::Display for Lang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown language tag `{0}` (expected java, py or cpp)")]
pub struct UnknownLang(pub String);

impl FromStr for Lang {
    type Err = UnknownLang;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "java" => Ok(Lang::Java),
            "py" => Ok(Lang::Py),
            "cpp" => Ok(Lang::Cpp),
            other => Err(UnknownLang(other.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for lang in Lang::ALL {
            assert_eq!(lang.tag().parse::<Lang>().unwrap(), lang);
        }
        assert!("python".parse::<Lang>().is_err());
    }
}
