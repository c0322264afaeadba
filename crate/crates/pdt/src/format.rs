//! Symbol stream files.
//!
//! Binary layout, all integers little-endian:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "PDT1"
//! 4       1     version (1)
//! 5       1     role (0 = plain over A, 1 = compressed over A ⊎ {σ₁, σ₂})
//! 6       2     k
//! 8       8     symbol count
//! 16      2·n   one u16 code per symbol (σ₁ = k, σ₂ = k + 1)
//! ```
//!
//! Text layout, for `k ≤ 36`: a line `k=<k> role=<role>`, then the symbols
//! as `0-9a-z` with `σ₁ = '+'` and `σ₂ = '*'`, no separators, then a newline.

use std::fmt;
use std::io::{Cursor, Read};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use pdt_core::{Alphabet, Symbol};

pub const MAGIC: &[u8; 4] = b"PDT1";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;
/// Largest `k` the text format can spell.
pub const TEXT_MAX_K: u16 = 36;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Plain = 0,
    Compressed = 1,
}

impl Role {
    fn from_byte(b: u8) -> Result<Self, FormatError> {
        match b {
            0 => Ok(Role::Plain),
            1 => Ok(Role::Compressed),
            other => Err(FormatError::BadRole(other)),
        }
    }

    /// Exclusive upper bound on codes for alphabet size `k`.
    pub fn code_limit(self, k: u16) -> u32 {
        match self {
            Role::Plain => k as u32,
            Role::Compressed => k as u32 + 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Binary,
    Text,
}

impl Format {
    /// Binary iff the bytes start with the magic.
    pub fn detect(bytes: &[u8]) -> Format {
        if bytes.starts_with(MAGIC) {
            Format::Binary
        } else {
            Format::Text
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Binary => "binary",
            Format::Text => "text",
        })
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("bad magic, not a PDT1 stream")]
    BadMagic,
    #[error("unsupported version {0}")]
    BadVersion(u8),
    #[error("unknown role {0}")]
    BadRole(u8),
    #[error("alphabet size {0} outside 2..=65534")]
    BadAlphabet(u32),
    #[error("stream truncated: expected {expected} bytes, found {found}")]
    TruncatedStream { expected: u64, found: u64 },
    #[error("{0} unexpected trailing byte(s)")]
    TrailingBytes(usize),
    #[error("code {code} at position {position} is out of range (limit {limit})")]
    CodeOutOfRange { position: usize, code: u32, limit: u32 },
    #[error("text format needs k <= 36, got {0}")]
    TextUnsupported(u16),
    #[error("malformed text header {0:?}")]
    BadHeader(String),
    #[error("unexpected character {ch:?} at position {position}")]
    BadCharacter { position: usize, ch: char },
}

/// A decoded stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stream {
    pub role: Role,
    pub k: Alphabet,
    pub symbols: Vec<Symbol>,
}

fn alphabet(k: u32) -> Result<Alphabet, FormatError> {
    Alphabet::new(k).map_err(|_| FormatError::BadAlphabet(k))
}

fn check_codes(symbols: &[Symbol], role: Role, k: Alphabet) -> Result<(), FormatError> {
    let limit = role.code_limit(k.k());
    match symbols.iter().position(|s| s.0 as u32 >= limit) {
        None => Ok(()),
        Some(position) => Err(FormatError::CodeOutOfRange {
            position,
            code: symbols[position].0 as u32,
            limit,
        }),
    }
}

fn text_char(code: u16, k: u16) -> char {
    match code {
        c if c < k && c < 10 => (b'0' + c as u8) as char,
        c if c < k => (b'a' + (c - 10) as u8) as char,
        c if c == k => '+',
        _ => '*',
    }
}

pub fn encode_stream(symbols: &[Symbol], role: Role, k: Alphabet, format: Format) -> Result<Vec<u8>, FormatError> {
    check_codes(symbols, role, k)?;
    match format {
        Format::Binary => {
            let mut out = Vec::with_capacity(HEADER_LEN + 2 * symbols.len());
            out.extend_from_slice(MAGIC);
            out.push(VERSION);
            out.push(role as u8);
            out.write_u16::<LittleEndian>(k.k()).unwrap();
            out.write_u64::<LittleEndian>(symbols.len() as u64).unwrap();
            for s in symbols {
                out.write_u16::<LittleEndian>(s.0).unwrap();
            }
            Ok(out)
        }
        Format::Text => {
            if k.k() > TEXT_MAX_K {
                return Err(FormatError::TextUnsupported(k.k()));
            }
            let mut out = format!("k={} role={}\n", k.k(), role as u8);
            out.extend(symbols.iter().map(|s| text_char(s.0, k.k())));
            out.push('\n');
            Ok(out.into_bytes())
        }
    }
}

pub fn decode_stream(bytes: &[u8], format: Format) -> Result<Stream, FormatError> {
    match format {
        Format::Binary => decode_binary(bytes),
        Format::Text => decode_text(bytes),
    }
}

fn decode_binary(bytes: &[u8]) -> Result<Stream, FormatError> {
    if bytes.len() < MAGIC.len() || &bytes[..4] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(FormatError::TruncatedStream {
            expected: HEADER_LEN as u64,
            found: bytes.len() as u64,
        });
    }
    let mut r = Cursor::new(&bytes[4..]);
    let version = r.read_u8().unwrap();
    if version != VERSION {
        return Err(FormatError::BadVersion(version));
    }
    let role = Role::from_byte(r.read_u8().unwrap())?;
    let k = alphabet(r.read_u16::<LittleEndian>().unwrap() as u32)?;
    let count = r.read_u64::<LittleEndian>().unwrap();
    let body = &bytes[HEADER_LEN..];
    let expected = count.saturating_mul(2);
    if (body.len() as u64) < expected {
        return Err(FormatError::TruncatedStream {
            expected: HEADER_LEN as u64 + expected,
            found: bytes.len() as u64,
        });
    }
    if body.len() as u64 > expected {
        return Err(FormatError::TrailingBytes(body.len() - expected as usize));
    }
    let mut symbols = Vec::with_capacity(count as usize);
    let mut r = Cursor::new(body);
    let mut code = [0u8; 2];
    while r.read_exact(&mut code).is_ok() {
        symbols.push(Symbol(u16::from_le_bytes(code)));
    }
    check_codes(&symbols, role, k)?;
    Ok(Stream { role, k, symbols })
}

fn parse_header(line: &str) -> Option<(u32, u8)> {
    let mut parts = line.split(' ');
    let k = parts.next()?.strip_prefix("k=")?.parse().ok()?;
    let role = parts.next()?.strip_prefix("role=")?.parse().ok()?;
    parts.next().is_none().then_some((k, role))
}

fn decode_text(bytes: &[u8]) -> Result<Stream, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::BadHeader("<not utf-8>".into()))?;
    let (line, body) = text.split_once('\n').unwrap_or((text, ""));
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (k, role) = parse_header(line).ok_or_else(|| FormatError::BadHeader(line.to_string()))?;
    let k = alphabet(k)?;
    if k.k() > TEXT_MAX_K {
        return Err(FormatError::TextUnsupported(k.k()));
    }
    let role = Role::from_byte(role)?;
    let body = body.strip_suffix('\n').unwrap_or(body);
    let body = body.strip_suffix('\r').unwrap_or(body);
    let limit = role.code_limit(k.k());
    let mut symbols = Vec::with_capacity(body.len());
    for (position, ch) in body.chars().enumerate() {
        let code = match ch {
            '0'..='9' => ch as u32 - '0' as u32,
            'a'..='z' => ch as u32 - 'a' as u32 + 10,
            '+' => k.k() as u32,
            '*' => k.k() as u32 + 1,
            _ => return Err(FormatError::BadCharacter { position, ch }),
        };
        // Markers are codes k and k + 1 whatever the role; digits at or above k are not.
        let is_digit = ch.is_ascii_alphanumeric();
        if code >= limit || (is_digit && code >= k.k() as u32) {
            return Err(FormatError::CodeOutOfRange { position, code, limit });
        }
        symbols.push(Symbol(code as u16));
    }
    Ok(Stream { role, k, symbols })
}
