use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// An edge label: a letter, possibly starred.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub name: String,
    pub star: bool,
}

impl Label {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), star: false }
    }

    pub fn starred(name: impl Into<String>) -> Self {
        Self { name: name.into(), star: true }
    }

    pub fn adjoint(&self) -> Self {
        Self { name: self.name.clone(), star: !self.star }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.star { "*" } else { "" })
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let (name, star) = match s.strip_suffix('*') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        let valid = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::InvalidArgument(format!("bad label `{s}`")));
        }
        Ok(Self { name: name.to_string(), star })
    }
}

impl From<&str> for Label {
    /// Panics on malformed input; meant for literals.
    fn from(s: &str) -> Self {
        s.parse().expect("valid label literal")
    }
}

/// Parse a whitespace-free word such as `ab*a` into letters, one character per
/// letter, or a space-separated word such as `x1 x2*` into tokens.
pub fn parse_word(word: &str) -> Result<Vec<Label>, Error> {
    if word.contains(char::is_whitespace) {
        return word.split_whitespace().map(str::parse).collect();
    }
    let chars: Vec<char> = word.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if !(c.is_alphabetic() || c == '_') {
            return Err(Error::InvalidArgument(format!("bad word `{word}`")));
        }
        let star = chars.get(i + 1) == Some(&'*');
        out.push(Label { name: c.to_string(), star });
        i += if star { 2 } else { 1 };
    }
    Ok(out)
}

pub fn format_word(word: &[Label]) -> String {
    let compact = word.iter().all(|l| l.name.chars().count() == 1);
    let parts: Vec<String> = word.iter().map(Label::to_string).collect();
    parts.join(if compact { "" } else { " " })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let w = parse_word("ab*a").unwrap();
        assert_eq!(w, vec![Label::new("a"), Label::starred("b"), Label::new("a")]);
        assert_eq!(format_word(&w), "ab*a");
        let w = parse_word("x1 x2*").unwrap();
        assert_eq!(format_word(&w), "x1 x2*");
        assert!(parse_word("a**").is_err());
        assert!("1x".parse::<Label>().is_err());
        assert_eq!(Label::from("u*").adjoint(), Label::new("u"));
    }
}
