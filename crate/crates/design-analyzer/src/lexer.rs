//! Java token scanner.
//!
//! Produces a flat token stream (identifiers, keywords, punctuation,
//! literals) with line/column positions. Comments are skipped, string and
//! character literals are consumed whole so their content can never leak
//! into identifier tokens, and annotations (`@Name(...)`) are dropped
//! before the stream is returned. This is deliberately not a full Java
//! grammar: the downstream parser only needs declaration-level structure.

use std::sync::Arc;

use thiserror::Error;

/// Lexical errors, reported with the file and the line where the
/// offending construct started.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("{file}:{line}: unterminated block comment")]
    UnterminatedComment { file: String, line: u32 },
    #[error("{file}:{line}: unterminated string or character literal")]
    UnterminatedString { file: String, line: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Identifier,
    Keyword,
    Punct,
    Literal,
}

/// Source position: file plus 1-based line. Shared by tokens, declarations
/// and interaction evidence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub file: Arc<str>,
    pub line: u32,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.file, self.line)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub file: Arc<str>,
    /// 1-based line of the token's first character.
    pub line: u32,
    /// 1-based column of the token's first character.
    pub column: u32,
}

impl Token {
    pub fn location(&self) -> Location {
        Location {
            file: self.file.clone(),
            line: self.line,
        }
    }

    pub fn is_kw(&self, text: &str) -> bool {
        self.kind == TokenKind::Keyword && self.text == text
    }

    pub fn is_punct(&self, text: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == text
    }

    pub fn is_identifier(&self) -> bool {
        self.kind == TokenKind::Identifier
    }
}

/// Java reserved words, sorted for binary search.
const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "try",
    "void",
    "volatile",
    "while",
];

fn is_keyword(word: &str) -> bool {
    KEYWORDS.binary_search(&word).is_ok()
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: u32,
    column: u32,
    file: Arc<str>,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, ahead: usize) -> Option<char> {
        self.chars.get(self.pos + ahead).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn token(&self, kind: TokenKind, text: String, line: u32, column: u32) -> Token {
        Token {
            kind,
            text,
            file: self.file.clone(),
            line,
            column,
        }
    }

    fn run(&mut self) -> Result<Vec<Token>, LexError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            if c == '/' && self.peek_at(1) == Some('/') {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
                continue;
            }
            if c == '/' && self.peek_at(1) == Some('*') {
                let start_line = self.line;
                self.bump();
                self.bump();
                let mut closed = false;
                while let Some(c) = self.bump() {
                    if c == '*' && self.peek() == Some('/') {
                        self.bump();
                        closed = true;
                        break;
                    }
                }
                if !closed {
                    return Err(LexError::UnterminatedComment {
                        file: self.file.to_string(),
                        line: start_line,
                    });
                }
                continue;
            }
            if c == '"' || c == '\'' {
                out.push(self.quoted_literal(c)?);
                continue;
            }
            let (line, column) = (self.line, self.column);
            if c.is_ascii_digit() {
                let mut text = String::new();
                while let Some(c) = self.peek() {
                    if c.is_alphanumeric() || c == '.' || c == '_' {
                        text.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                out.push(self.token(TokenKind::Literal, text, line, column));
                continue;
            }
            if is_ident_start(c) {
                let mut text = String::new();
                while let Some(c) = self.peek() {
                    if is_ident_part(c) {
                        text.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                let kind = if is_keyword(&text) {
                    TokenKind::Keyword
                } else if text == "true" || text == "false" || text == "null" {
                    TokenKind::Literal
                } else {
                    TokenKind::Identifier
                };
                out.push(self.token(kind, text, line, column));
                continue;
            }
            self.bump();
            out.push(self.token(TokenKind::Punct, c.to_string(), line, column));
        }
        Ok(out)
    }

    fn quoted_literal(&mut self, quote: char) -> Result<Token, LexError> {
        let (line, column) = (self.line, self.column);
        let mut text = String::new();
        text.push(quote);
        self.bump();
        loop {
            match self.peek() {
                None | Some('\n') => {
                    return Err(LexError::UnterminatedString {
                        file: self.file.to_string(),
                        line,
                    });
                }
                Some('\\') => {
                    text.push('\\');
                    self.bump();
                    if let Some(escaped) = self.bump() {
                        text.push(escaped);
                    }
                }
                Some(c) if c == quote => {
                    text.push(c);
                    self.bump();
                    return Ok(self.token(TokenKind::Literal, text, line, column));
                }
                Some(c) => {
                    text.push(c);
                    self.bump();
                }
            }
        }
    }
}

/// Drop annotation uses from the stream: `@Name`, `@a.b.Name` and
/// `@Name(...)` with balanced parentheses. `@interface` keeps the keyword
/// so annotation type declarations still parse as interfaces.
fn strip_annotations(tokens: Vec<Token>) -> Vec<Token> {
    let mut out = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        if !tokens[i].is_punct("@") {
            out.push(tokens[i].clone());
            i += 1;
            continue;
        }
        match tokens.get(i + 1) {
            Some(next) if next.is_kw("interface") => {
                i += 1;
            }
            Some(next) if next.is_identifier() => {
                i += 2;
                while matches!(
                    (tokens.get(i), tokens.get(i + 1)),
                    (Some(dot), Some(seg)) if dot.is_punct(".") && seg.is_identifier()
                ) {
                    i += 2;
                }
                if matches!(tokens.get(i), Some(p) if p.is_punct("(")) {
                    let mut depth = 0usize;
                    while let Some(tok) = tokens.get(i) {
                        if tok.is_punct("(") {
                            depth += 1;
                        } else if tok.is_punct(")") {
                            depth -= 1;
                            if depth == 0 {
                                i += 1;
                                break;
                            }
                        }
                        i += 1;
                    }
                }
            }
            _ => {
                i += 1;
            }
        }
    }
    out
}

/// Tokenize one source file. `file` is recorded on every token for
/// diagnostics and evidence locations.
pub fn tokenize(source: &str, file: &str) -> Result<Vec<Token>, LexError> {
    let mut lexer = Lexer {
        chars: source.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
        file: Arc::from(file),
    };
    let raw = lexer.run()?;
    Ok(strip_annotations(raw))
}
