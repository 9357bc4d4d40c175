use super::{ParseError, ParseErrorKind, Pos};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Kw(&'static str),
    Sym(&'static str),
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(i) => format!("integer `{i}`"),
            Tok::Kw(k) | Tok::Sym(k) => format!("`{k}`"),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "spec", "basic", "free", "NAT", "INT", "P", "seq", "fset", "rel", "pfun", "fun", "ffun",
    "in", "notin", "subseteq", "not", "cup", "cap", "setminus", "dom", "ran",
];

// longest first
const SYMBOLS: &[&str] = &[
    "::=", "|->", "/=", "!=", "<=", ">=", "..", "{", "}", "(", ")", ",", ";", ":", "|", "=", "<",
    ">", "@", "#", "+", "-", "*",
];

pub fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                col += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            // decorations: `?` inputs, `!` outputs (but not the `!=` operator)
            if i < chars.len()
                && (chars[i] == '?' || (chars[i] == '!' && chars.get(i + 1) != Some(&'=')))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match KEYWORDS.iter().find(|k| **k == word) {
                Some(k) => Tok::Kw(k),
                None => Tok::Ident(word),
            };
            out.push((tok, pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            col += i - start;
            let v = digits
                .parse::<i64>()
                .map_err(|_| ParseError::new(pos, ParseErrorKind::BadInteger(digits.clone())))?;
            out.push((Tok::Int(v), pos));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push((Tok::Sym(s), pos));
            }
            None => return Err(ParseError::new(pos, ParseErrorKind::UnexpectedChar(c))),
        }
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decorations_and_comments() {
        let toks = tokenize("e? != x! -- trailing\n x!= 1").unwrap();
        let kinds: Vec<Tok> = toks.into_iter().map(|(t, _)| t).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("e?".into()),
                Tok::Sym("!="),
                Tok::Ident("x!".into()),
                Tok::Ident("x".into()),
                Tok::Sym("!="),
                Tok::Int(1),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn maplet_and_ranges() {
        let toks = tokenize("a |-> b .. c | d ::= e").unwrap();
        let syms: Vec<Tok> = toks.into_iter().map(|(t, _)| t).filter(|t| matches!(t, Tok::Sym(_))).collect();
        assert_eq!(syms, vec![Tok::Sym("|->"), Tok::Sym(".."), Tok::Sym("|"), Tok::Sym("::=")]);
    }

    #[test]
    fn bad_char_is_located() {
        let err = tokenize("spec A {\n  x ~ 1 }").unwrap_err();
        assert_eq!((err.line, err.col), (2, 5));
    }
}
