//! Declaration-level Java parser.
//!
//! Walks the token stream with brace-depth tracking and recovers class and
//! interface declarations: heritage clauses, field declarations, method
//! signatures and constructor-call expressions inside method bodies. It is
//! not a full grammar; statement-level syntax inside bodies is skipped
//! except for the patterns the interaction detectors feed on.
//!
//! Conventions baked in here:
//! - nested types are named `Outer.Inner`;
//! - anonymous classes and lambdas never produce declarations;
//! - generic arguments and array brackets are stripped from captured type
//!   names (`List<A>[]` is captured as `List`);
//! - constructors are recorded as methods returning `"void"`;
//! - a member with no access modifier gets package access.

use thiserror::Error;

use crate::lexer::{LexError, Location, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error("{file}:{line}: unbalanced braces (this '{{' is never closed)")]
    UnbalancedBraces { file: String, line: u32 },
    #[error("{file}:{line}: class or interface declaration is missing a name")]
    MissingClassName { file: String, line: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassKind {
    Class,
    Interface,
}

impl ClassKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassKind::Class => "class",
            ClassKind::Interface => "interface",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Access {
    Public,
    Protected,
    Package,
    Private,
}

impl Access {
    /// Visible to other classes in the sense of the VisibleMembers measure:
    /// everything except `private`.
    pub fn is_visible(self) -> bool {
        !matches!(self, Access::Private)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDecl {
    pub name: String,
    /// Base type name with generic arguments and array brackets stripped.
    pub declared_type: String,
    pub access: Access,
    /// True when the field initializer is a constructor call (`= new T(...)`).
    pub is_instantiation: bool,
    pub location: Location,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodSignature {
    pub name: String,
    /// `"void"` for constructors and void methods.
    pub return_type: String,
    /// Positional, duplicates preserved.
    pub parameter_types: Vec<String>,
    pub access: Access,
    pub location: Location,
}

/// One `new T(...)` expression found inside a method body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalInstantiation {
    pub type_name: String,
    pub location: Location,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecl {
    /// Simple name, or `Outer.Inner` for nested types. May later be
    /// qualified by file stem if two files declare the same name.
    pub name: String,
    pub kind: ClassKind,
    pub extends_name: Option<String>,
    pub implements_names: Vec<String>,
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodSignature>,
    pub local_instantiations: Vec<LocalInstantiation>,
    pub location: Location,
}

impl ClassDecl {
    /// Last segment of the (possibly nested or qualified) name.
    pub fn simple_name(&self) -> &str {
        self.name.rsplit('.').next().unwrap_or(&self.name)
    }
}

const PRIMITIVE_TYPES: &[&str] = &[
    "boolean", "byte", "char", "double", "float", "int", "long", "short", "void",
];

const MEMBER_MODIFIERS: &[&str] = &[
    "abstract",
    "default",
    "final",
    "native",
    "static",
    "strictfp",
    "synchronized",
    "transient",
    "volatile",
];

struct Cursor<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(tokens: &'a [Token]) -> Self {
        Cursor { tokens, pos: 0 }
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, ahead: usize) -> Option<&'a Token> {
        self.tokens.get(self.pos + ahead)
    }

    fn advance(&mut self) -> Option<&'a Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }
}

#[derive(Default)]
struct BodyContents {
    fields: Vec<FieldDecl>,
    methods: Vec<MethodSignature>,
    locals: Vec<LocalInstantiation>,
    nested: Vec<ClassDecl>,
}

/// Parse every class and interface declaration in one file's token stream.
/// Top-level and nested declarations are returned in a flat list.
pub fn parse_classes(tokens: &[Token]) -> Result<Vec<ClassDecl>, ParseError> {
    let mut cur = Cursor::new(tokens);
    let mut decls = Vec::new();
    while let Some(tok) = cur.peek() {
        if tok.is_kw("class") || tok.is_kw("interface") {
            parse_type_decl(&mut cur, &[], &mut decls)?;
        } else if tok.is_punct("{") {
            skip_balanced_braces(&mut cur)?;
        } else {
            cur.advance();
        }
    }
    Ok(decls)
}

/// Members extracted from a single class body.
#[derive(Debug, Default)]
pub struct MemberSet {
    pub fields: Vec<FieldDecl>,
    pub methods: Vec<MethodSignature>,
    pub locals: Vec<LocalInstantiation>,
}

/// Extract the members of exactly one class body, given the tokens between
/// (not including) its braces. Nested declarations encountered in the body
/// are discarded here; `parse_classes` is the entry point that keeps them.
pub fn extract_members(body: &[Token], class_simple_name: &str) -> Result<MemberSet, ParseError> {
    let mut cur = Cursor::new(body);
    let contents = scan_members(&mut cur, &[class_simple_name.to_string()], None)?;
    Ok(MemberSet {
        fields: contents.fields,
        methods: contents.methods,
        locals: contents.locals,
    })
}

fn parse_type_decl(
    cur: &mut Cursor,
    outer: &[String],
    out: &mut Vec<ClassDecl>,
) -> Result<(), ParseError> {
    let kw = cur.advance().expect("caller checked the keyword");
    let kind = if kw.text == "interface" {
        ClassKind::Interface
    } else {
        ClassKind::Class
    };
    let name_tok = match cur.peek() {
        Some(tok) if tok.is_identifier() => cur.advance().unwrap(),
        _ => {
            return Err(ParseError::MissingClassName {
                file: kw.file.to_string(),
                line: kw.line,
            });
        }
    };
    let simple_name = name_tok.text.clone();
    let qualified = if outer.is_empty() {
        simple_name.clone()
    } else {
        format!("{}.{}", outer.join("."), simple_name)
    };

    let mut extends_name = None;
    let mut implements_names = Vec::new();
    let mut body = None;
    while let Some(tok) = cur.peek() {
        if tok.is_punct("<") {
            skip_generic_group(cur);
        } else if tok.is_kw("extends") {
            cur.advance();
            let mut names = parse_type_list(cur);
            if !names.is_empty() {
                // An interface may extend several interfaces; the first one
                // fills the extends slot, the rest join the implements list
                // so every supertype still yields inheritance evidence.
                extends_name = Some(names.remove(0));
                implements_names.extend(names);
            }
        } else if tok.is_kw("implements") {
            cur.advance();
            implements_names.extend(parse_type_list(cur));
        } else if tok.is_punct("{") {
            let open = tok.location();
            cur.advance();
            let mut inner_outer: Vec<String> = outer.to_vec();
            inner_outer.push(simple_name.clone());
            body = Some(scan_members(cur, &inner_outer, Some(open))?);
            break;
        } else if tok.is_punct(";") {
            cur.advance();
            break;
        } else {
            cur.advance();
        }
    }

    let contents = body.unwrap_or_default();
    out.push(ClassDecl {
        name: qualified,
        kind,
        extends_name,
        implements_names,
        fields: contents.fields,
        methods: contents.methods,
        local_instantiations: contents.locals,
        location: name_tok.location(),
    });
    out.extend(contents.nested);
    Ok(())
}

/// Scan one class body for members and nested declarations. `outer` is
/// the enclosing type path used to qualify nested classes. With
/// `open_brace` set, end of input before the closing brace is an error;
/// without it (braceless bodies fed to `extract_members`) end of input
/// simply ends the member list.
fn scan_members(
    cur: &mut Cursor,
    outer: &[String],
    open_brace: Option<Location>,
) -> Result<BodyContents, ParseError> {
    let mut contents = BodyContents::default();
    let mut access = Access::Package;
    loop {
        let Some(tok) = cur.peek() else {
            match open_brace {
                // `extract_members` feeds a braceless body; end of input
                // simply ends the member list.
                None => break,
                Some(loc) => {
                    return Err(ParseError::UnbalancedBraces {
                        file: loc.file.to_string(),
                        line: loc.line,
                    });
                }
            }
        };
        if tok.is_punct("}") {
            cur.advance();
            break;
        }
        if tok.is_punct(";") {
            cur.advance();
            access = Access::Package;
            continue;
        }
        if tok.is_punct("{") {
            // Instance or static initializer block.
            skip_balanced_braces(cur)?;
            access = Access::Package;
            continue;
        }
        if tok.is_punct("<") {
            // Type parameters of a generic method.
            skip_generic_group(cur);
            continue;
        }
        if tok.kind == crate::lexer::TokenKind::Keyword {
            match tok.text.as_str() {
                "public" => {
                    access = Access::Public;
                    cur.advance();
                    continue;
                }
                "protected" => {
                    access = Access::Protected;
                    cur.advance();
                    continue;
                }
                "private" => {
                    access = Access::Private;
                    cur.advance();
                    continue;
                }
                m if MEMBER_MODIFIERS.contains(&m) => {
                    cur.advance();
                    continue;
                }
                "class" | "interface" => {
                    parse_type_decl(cur, outer, &mut contents.nested)?;
                    access = Access::Package;
                    continue;
                }
                "enum" => {
                    skip_enum_declaration(cur)?;
                    access = Access::Package;
                    continue;
                }
                t if PRIMITIVE_TYPES.contains(&t) => {
                    // Falls through to the member parse below.
                }
                _ => {
                    cur.advance();
                    continue;
                }
            }
        }
        if parse_member(cur, outer, access, &mut contents)? {
            access = Access::Package;
        } else {
            cur.advance();
        }
    }
    Ok(contents)
}

/// Parse one field, method or constructor starting at the current token.
/// Returns false when the tokens do not open a member.
fn parse_member(
    cur: &mut Cursor,
    outer: &[String],
    access: Access,
    contents: &mut BodyContents,
) -> Result<bool, ParseError> {
    let Some((type_name, type_loc)) = parse_type_ref(cur) else {
        return Ok(false);
    };
    match cur.peek() {
        Some(tok) if tok.is_punct("(") => {
            // Constructor (or constructor-shaped member): the captured
            // "type" is really the member name.
            let simple = type_name
                .rsplit('.')
                .next()
                .unwrap_or(&type_name)
                .to_string();
            let params = parse_params(cur);
            finish_method(
                cur,
                simple,
                "void".to_string(),
                params,
                access,
                type_loc,
                outer,
                contents,
            )?;
            Ok(true)
        }
        Some(tok) if tok.is_identifier() => {
            let name_tok = cur.advance().unwrap();
            let member_name = name_tok.text.clone();
            let member_loc = name_tok.location();
            if matches!(cur.peek(), Some(t) if t.is_punct("(")) {
                let params = parse_params(cur);
                finish_method(
                    cur,
                    member_name,
                    type_name,
                    params,
                    access,
                    member_loc,
                    outer,
                    contents,
                )?;
            } else {
                parse_field_declarators(cur, &type_name, member_name, member_loc, access, contents);
            }
            Ok(true)
        }
        _ => Ok(true),
    }
}

/// Consume a parameter list starting at `(`. Returns the stripped
/// parameter type names in positional order.
fn parse_params(cur: &mut Cursor) -> Vec<String> {
    let mut params = Vec::new();
    cur.advance(); // the opening parenthesis
    while let Some(tok) = cur.peek() {
        if tok.is_punct(")") {
            cur.advance();
            break;
        }
        if tok.is_punct(",") || tok.is_punct(".") || tok.is_punct("[") || tok.is_punct("]") {
            cur.advance();
            continue;
        }
        if tok.is_kw("final") {
            cur.advance();
            continue;
        }
        if let Some((type_name, _)) = parse_type_ref(cur) {
            params.push(type_name);
            // Optional parameter name; `...` and trailing brackets are
            // consumed by the loop above.
            if matches!(cur.peek(), Some(t) if t.is_identifier()) {
                cur.advance();
            }
        } else {
            cur.advance();
        }
    }
    params
}

#[allow(clippy::too_many_arguments)]
fn finish_method(
    cur: &mut Cursor,
    name: String,
    return_type: String,
    parameter_types: Vec<String>,
    access: Access,
    location: Location,
    outer: &[String],
    contents: &mut BodyContents,
) -> Result<(), ParseError> {
    // Skip the tail (throws clause and such) up to the body or terminator.
    loop {
        match cur.peek() {
            None => break,
            Some(tok) if tok.is_punct(";") => {
                cur.advance();
                break;
            }
            Some(tok) if tok.is_punct("{") => {
                let open = tok.location();
                cur.advance();
                scan_method_body(cur, outer, open, contents)?;
                break;
            }
            _ => {
                cur.advance();
            }
        }
    }
    contents.methods.push(MethodSignature {
        name,
        return_type,
        parameter_types,
        access,
        location,
    });
    Ok(())
}

/// Walk a method body collecting `new T(...)` expressions and any named
/// local type declarations. The cursor starts just after the opening brace.
fn scan_method_body(
    cur: &mut Cursor,
    outer: &[String],
    open_brace: Location,
    contents: &mut BodyContents,
) -> Result<(), ParseError> {
    let mut depth = 1usize;
    loop {
        let Some(tok) = cur.peek() else {
            return Err(ParseError::UnbalancedBraces {
                file: open_brace.file.to_string(),
                line: open_brace.line,
            });
        };
        if tok.is_punct("{") {
            depth += 1;
            cur.advance();
            continue;
        }
        if tok.is_punct("}") {
            depth -= 1;
            cur.advance();
            if depth == 0 {
                return Ok(());
            }
            continue;
        }
        if tok.is_kw("new") {
            let new_loc = tok.location();
            cur.advance();
            if let Some((type_name, _)) = parse_type_ref(cur) {
                if matches!(cur.peek(), Some(t) if t.is_punct("(")) {
                    contents.locals.push(LocalInstantiation {
                        type_name,
                        location: new_loc,
                    });
                }
            }
            continue;
        }
        if tok.is_kw("class") || tok.is_kw("interface") {
            parse_type_decl(cur, outer, &mut contents.nested)?;
            continue;
        }
        cur.advance();
    }
}

fn parse_field_declarators(
    cur: &mut Cursor,
    declared_type: &str,
    first_name: String,
    first_loc: Location,
    access: Access,
    contents: &mut BodyContents,
) {
    let mut name = first_name;
    let mut location = first_loc;
    loop {
        while matches!(cur.peek(), Some(t) if t.is_punct("[") || t.is_punct("]")) {
            cur.advance();
        }
        let mut is_instantiation = false;
        if matches!(cur.peek(), Some(t) if t.is_punct("=")) {
            cur.advance();
            if matches!(cur.peek(), Some(t) if t.is_kw("new")) {
                is_instantiation = true;
            }
            skip_initializer(cur);
        }
        contents.fields.push(FieldDecl {
            name,
            declared_type: declared_type.to_string(),
            access,
            is_instantiation,
            location,
        });
        match cur.peek() {
            Some(tok) if tok.is_punct(",") => {
                cur.advance();
                match cur.peek() {
                    Some(next) if next.is_identifier() => {
                        let tok = cur.advance().unwrap();
                        name = tok.text.clone();
                        location = tok.location();
                    }
                    _ => break,
                }
            }
            Some(tok) if tok.is_punct(";") => {
                cur.advance();
                break;
            }
            _ => break,
        }
    }
}

/// Consume an initializer expression up to (not including) the `,` or `;`
/// that ends it at nesting depth zero.
fn skip_initializer(cur: &mut Cursor) {
    let mut depth = 0i64;
    while let Some(tok) = cur.peek() {
        if depth == 0 && (tok.is_punct(",") || tok.is_punct(";")) {
            return;
        }
        if tok.is_punct("(") || tok.is_punct("[") || tok.is_punct("{") {
            depth += 1;
        } else if tok.is_punct(")") || tok.is_punct("]") || tok.is_punct("}") {
            if depth == 0 {
                // Stray closer belongs to the enclosing body.
                return;
            }
            depth -= 1;
        }
        cur.advance();
    }
}

/// Capture a type reference: a dotted identifier chain (or primitive type
/// keyword) with generic argument groups and array brackets stripped.
fn parse_type_ref(cur: &mut Cursor) -> Option<(String, Location)> {
    let tok = cur.peek()?;
    let starts_type = tok.is_identifier()
        || (tok.kind == crate::lexer::TokenKind::Keyword && PRIMITIVE_TYPES.contains(&tok.text.as_str()));
    if !starts_type {
        return None;
    }
    let first = cur.advance().unwrap();
    let mut name = first.text.clone();
    let location = first.location();
    loop {
        match cur.peek() {
            Some(tok) if tok.is_punct("<") => {
                skip_generic_group(cur);
            }
            Some(tok)
                if tok.is_punct(".")
                    && matches!(cur.peek_at(1), Some(n) if n.is_identifier()) =>
            {
                cur.advance();
                let seg = cur.advance().unwrap();
                name.push('.');
                name.push_str(&seg.text);
            }
            Some(tok)
                if tok.is_punct("[") && matches!(cur.peek_at(1), Some(n) if n.is_punct("]")) =>
            {
                cur.advance();
                cur.advance();
            }
            _ => break,
        }
    }
    Some((name, location))
}

/// Consume a comma-separated list of type references (heritage clauses).
fn parse_type_list(cur: &mut Cursor) -> Vec<String> {
    let mut names = Vec::new();
    while let Some((name, _)) = parse_type_ref(cur) {
        names.push(name);
        if matches!(cur.peek(), Some(t) if t.is_punct(",")) {
            cur.advance();
        } else {
            break;
        }
    }
    names
}

/// Consume a balanced `<...>` group starting at `<`. Best effort: an
/// unclosed group simply exhausts the stream.
fn skip_generic_group(cur: &mut Cursor) {
    let mut depth = 0i64;
    while let Some(tok) = cur.peek() {
        if tok.is_punct("<") {
            depth += 1;
        } else if tok.is_punct(">") {
            depth -= 1;
            if depth == 0 {
                cur.advance();
                return;
            }
        }
        cur.advance();
    }
}

/// Consume a balanced `{...}` block starting at `{`.
fn skip_balanced_braces(cur: &mut Cursor) -> Result<(), ParseError> {
    let open = cur
        .peek()
        .expect("caller checked the opening brace")
        .location();
    let mut depth = 0i64;
    while let Some(tok) = cur.advance() {
        if tok.is_punct("{") {
            depth += 1;
        } else if tok.is_punct("}") {
            depth -= 1;
            if depth == 0 {
                return Ok(());
            }
        }
    }
    Err(ParseError::UnbalancedBraces {
        file: open.file.to_string(),
        line: open.line,
    })
}

/// Consume an `enum` declaration: the keyword was seen but not consumed.
fn skip_enum_declaration(cur: &mut Cursor) -> Result<(), ParseError> {
    cur.advance(); // enum
    while let Some(tok) = cur.peek() {
        if tok.is_punct("{") {
            return skip_balanced_braces(cur);
        }
        if tok.is_punct(";") {
            cur.advance();
            return Ok(());
        }
        cur.advance();
    }
    Ok(())
}
