//! On-disk tables: canonical JSON, and a compact little-endian binary form.
//!
//! Binary layout:
//! `"KLVT"`, version byte, `u64` body length, body, CRC-32 of everything
//! before it. The body is the JSON header (length-prefixed) followed by the
//! sections, each `name`, `u64` entry count and entries of the form
//! `u8` key length, `u32` keys, `i32` lowest exponent, `u32` coefficient
//! count, `i128` coefficients.

use std::io::{Read, Write};

use klv_core::coxeter::{CoxeterGroup, CoxeterSystem, ElementId};
use klv_core::kl::{ConstantsKind, ConstantsTable, KlTable};
use klv_core::twisted::{SigmaTable, SplitConstants, SplitPolys};
use klv_core::LaurentPoly;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u8 = 1;
const MAGIC: &[u8; 4] = b"KLVT";

#[derive(Debug, thiserror::Error)]
pub enum TableFileError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(serde_json::Error),
    #[error("not a klv table file")]
    BadMagic,
    #[error("format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u8, expected: u8 },
    #[error("checksum mismatch")]
    Checksum,
    #[error("file is truncated")]
    Truncated,
    #[error("malformed table: {0}")]
    Malformed(String),
}

impl From<serde_json::Error> for TableFileError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_eof() {
            TableFileError::Truncated
        } else {
            TableFileError::Json(e)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Kl,
    Psigma,
    SplitPolys,
    H,
    Htilde,
    Hsigma,
    SplitConstants,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Kl => "kl",
            TableKind::Psigma => "psigma",
            TableKind::SplitPolys => "split-polys",
            TableKind::H => "h",
            TableKind::Htilde => "htilde",
            TableKind::Hsigma => "hsigma",
            TableKind::SplitConstants => "split-constants",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format_version: u8,
    pub system: String,
    pub matrix: Vec<Vec<u32>>,
    pub twist: Vec<usize>,
    pub kind: TableKind,
    /// Reduced word of each element index, in ShortLex order.
    pub elements: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub key: Vec<ElementId>,
    pub poly: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub family: String,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub header: Header,
    pub sections: Vec<Section>,
}

fn header(g: &CoxeterGroup, kind: TableKind) -> Header {
    let sys = g.system();
    Header {
        format_version: FORMAT_VERSION,
        system: sys.name().to_string(),
        matrix: sys.matrix().to_vec(),
        twist: sys.twist().to_vec(),
        kind,
        elements: g.elements().map(|w| g.word(w).to_vec()).collect(),
    }
}

fn pair_section<'a>(
    family: &str,
    it: impl Iterator<Item = (ElementId, ElementId, &'a LaurentPoly)>,
) -> Section {
    Section {
        family: family.to_string(),
        entries: it
            .map(|(y, w, p)| Entry {
                key: vec![y, w],
                poly: p.clone(),
            })
            .collect(),
    }
}

fn constants_section(family: &str, t: &ConstantsTable) -> Section {
    Section {
        family: family.to_string(),
        entries: t
            .iter()
            .map(|(x, y, z, p)| Entry {
                key: vec![x, y, z],
                poly: p.clone(),
            })
            .collect(),
    }
}

impl TableFile {
    pub fn from_kl(g: &CoxeterGroup, kl: &KlTable) -> Self {
        TableFile {
            header: header(g, TableKind::Kl),
            sections: vec![pair_section("P", kl.iter())],
        }
    }

    pub fn from_sigma(g: &CoxeterGroup, sigma: &SigmaTable) -> Self {
        TableFile {
            header: header(g, TableKind::Psigma),
            sections: vec![pair_section("P^sigma", sigma.pairs().iter())],
        }
    }

    pub fn from_split_polys(g: &CoxeterGroup, split: &SplitPolys) -> Self {
        TableFile {
            header: header(g, TableKind::SplitPolys),
            sections: vec![
                pair_section("P^+", split.plus.iter()),
                pair_section("P^-", split.minus.iter()),
            ],
        }
    }

    pub fn from_constants(g: &CoxeterGroup, table: &ConstantsTable) -> Self {
        let (kind, family) = match table.kind() {
            ConstantsKind::H => (TableKind::H, "h"),
            ConstantsKind::HTilde => (TableKind::Htilde, "h~"),
            ConstantsKind::HSigma => (TableKind::Hsigma, "h^sigma"),
            other => panic!("{other:?} tables are stored through their split pair"),
        };
        TableFile {
            header: header(g, kind),
            sections: vec![constants_section(family, table)],
        }
    }

    pub fn from_split_constants(g: &CoxeterGroup, split: &SplitConstants) -> Self {
        TableFile {
            header: header(g, TableKind::SplitConstants),
            sections: vec![
                constants_section("h^+", &split.plus),
                constants_section("h^-", &split.minus),
            ],
        }
    }

    /// The system recorded in the header.
    pub fn system(&self) -> Result<CoxeterSystem, TableFileError> {
        CoxeterSystem::from_matrix(
            &self.header.system,
            self.header.matrix.clone(),
            self.header.twist.clone(),
        )
        .map_err(|e| TableFileError::Malformed(e.to_string()))
    }

    /// Confirms the element dictionary matches the enumeration of `g`.
    pub fn check_against(&self, g: &CoxeterGroup) -> Result<(), TableFileError> {
        let sys = g.system();
        if self.header.matrix != sys.matrix() || self.header.twist != sys.twist() {
            return Err(TableFileError::Malformed("system differs".into()));
        }
        let ok = self.header.elements.len() == g.size()
            && g.elements()
                .all(|w| self.header.elements[w as usize] == g.word(w));
        if ok {
            Ok(())
        } else {
            Err(TableFileError::Malformed(
                "element dictionary differs".into(),
            ))
        }
    }

    fn section(&self, family: &str) -> Result<&Section, TableFileError> {
        self.sections
            .iter()
            .find(|s| s.family == family)
            .ok_or_else(|| TableFileError::Malformed(format!("missing section {family}")))
    }

    fn pairs(
        &self,
        family: &str,
    ) -> Result<Vec<(ElementId, ElementId, LaurentPoly)>, TableFileError> {
        self.section(family)?
            .entries
            .iter()
            .map(|e| match e.key[..] {
                [y, w] => Ok((y, w, e.poly.clone())),
                _ => Err(TableFileError::Malformed("expected (y, w) keys".into())),
            })
            .collect()
    }

    fn triples(
        &self,
        family: &str,
    ) -> Result<Vec<(ElementId, ElementId, ElementId, LaurentPoly)>, TableFileError> {
        self.section(family)?
            .entries
            .iter()
            .map(|e| match e.key[..] {
                [x, y, z] => Ok((x, y, z, e.poly.clone())),
                _ => Err(TableFileError::Malformed("expected (x, y, z) keys".into())),
            })
            .collect()
    }

    fn expect_kind(&self, kind: TableKind) -> Result<(), TableFileError> {
        if self.header.kind == kind {
            Ok(())
        } else {
            Err(TableFileError::Malformed(format!(
                "expected a {} table, found {}",
                kind.name(),
                self.header.kind.name()
            )))
        }
    }

    fn malformed(e: impl ToString) -> TableFileError {
        TableFileError::Malformed(e.to_string())
    }

    pub fn to_kl(&self, g: &CoxeterGroup) -> Result<KlTable, TableFileError> {
        self.expect_kind(TableKind::Kl)?;
        self.check_against(g)?;
        KlTable::from_entries(g, self.pairs("P")?).map_err(Self::malformed)
    }

    pub fn to_sigma(&self, g: &CoxeterGroup) -> Result<SigmaTable, TableFileError> {
        self.expect_kind(TableKind::Psigma)?;
        self.check_against(g)?;
        SigmaTable::from_entries(g, self.pairs("P^sigma")?).map_err(Self::malformed)
    }

    pub fn to_constants(&self, g: &CoxeterGroup) -> Result<ConstantsTable, TableFileError> {
        self.check_against(g)?;
        let all: Vec<ElementId> = g.elements().collect();
        let tw = g.twisted_involutions().to_vec();
        let (kind, family, ys) = match self.header.kind {
            TableKind::H => (ConstantsKind::H, "h", all.clone()),
            TableKind::Htilde => (ConstantsKind::HTilde, "h~", tw),
            TableKind::Hsigma => (ConstantsKind::HSigma, "h^sigma", tw),
            other => {
                return Err(TableFileError::Malformed(format!(
                    "{} is not a constants table",
                    other.name()
                )))
            }
        };
        ConstantsTable::from_entries(kind, g.size(), all, ys, self.triples(family)?)
            .map_err(Self::malformed)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), TableFileError> {
        serde_json::to_writer(&mut *out, self).map_err(TableFileError::Json)?;
        out.write_all(b"\n")?;
        Ok(())
    }

    pub fn read_json(input: &mut dyn Read) -> Result<Self, TableFileError> {
        let file: TableFile = serde_json::from_reader(input)?;
        if file.header.format_version != FORMAT_VERSION {
            return Err(TableFileError::VersionMismatch {
                found: file.header.format_version,
                expected: FORMAT_VERSION,
            });
        }
        Ok(file)
    }

    pub fn to_binary(&self) -> Vec<u8> {
        let mut body = Vec::new();
        let header = serde_json::to_vec(&self.header).expect("header serializes");
        body.extend((header.len() as u64).to_le_bytes());
        body.extend(header);
        body.extend((self.sections.len() as u32).to_le_bytes());
        for section in &self.sections {
            body.extend((section.family.len() as u32).to_le_bytes());
            body.extend(section.family.as_bytes());
            body.extend((section.entries.len() as u64).to_le_bytes());
            for e in &section.entries {
                body.push(e.key.len() as u8);
                for k in &e.key {
                    body.extend(k.to_le_bytes());
                }
                let (lo, hi) = (e.poly.low_degree(), e.poly.degree());
                let count = if e.poly.is_zero() { 0 } else { hi - lo + 1 };
                body.extend(lo.to_le_bytes());
                body.extend((count as u32).to_le_bytes());
                for k in 0..count {
                    body.extend(e.poly.coefficient(lo + k).to_le_bytes());
                }
            }
        }
        let mut out = Vec::with_capacity(body.len() + 17);
        out.extend(MAGIC);
        out.push(FORMAT_VERSION);
        out.extend((body.len() as u64).to_le_bytes());
        out.extend(body);
        let crc = crc32fast::hash(&out);
        out.extend(crc.to_le_bytes());
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self, TableFileError> {
        if bytes.len() < 5 {
            return Err(TableFileError::Truncated);
        }
        if &bytes[..4] != MAGIC {
            return Err(TableFileError::BadMagic);
        }
        if bytes[4] != FORMAT_VERSION {
            return Err(TableFileError::VersionMismatch {
                found: bytes[4],
                expected: FORMAT_VERSION,
            });
        }
        let mut r = Reader { bytes, at: 5 };
        let len = r.u64()? as usize;
        let end = 13usize.checked_add(len).ok_or(TableFileError::Truncated)?;
        if bytes.len() < end + 4 {
            return Err(TableFileError::Truncated);
        }
        if bytes.len() > end + 4 {
            return Err(TableFileError::Malformed("trailing bytes".into()));
        }
        let stored = u32::from_le_bytes(bytes[end..end + 4].try_into().unwrap());
        if crc32fast::hash(&bytes[..end]) != stored {
            return Err(TableFileError::Checksum);
        }
        let mut r = Reader {
            bytes: &bytes[..end],
            at: 13,
        };
        let header_len = r.u64()? as usize;
        let header: Header = serde_json::from_slice(r.take(header_len)?)?;
        let n_sections = r.u32()?;
        let mut sections = Vec::new();
        for _ in 0..n_sections {
            let name_len = r.u32()? as usize;
            let family = String::from_utf8(r.take(name_len)?.to_vec())
                .map_err(|_| TableFileError::Malformed("section name".into()))?;
            let count = r.u64()?;
            let mut entries = Vec::new();
            for _ in 0..count {
                let key_len = r.take(1)?[0] as usize;
                let key = (0..key_len).map(|_| r.u32()).collect::<Result<_, _>>()?;
                let lo = r.u32()? as i32;
                let n = r.u32()? as usize;
                let coeffs = (0..n)
                    .map(|_| Ok(i128::from_le_bytes(r.take(16)?.try_into().unwrap())))
                    .collect::<Result<Vec<_>, TableFileError>>()?;
                entries.push(Entry {
                    key,
                    poly: LaurentPoly::from_coeffs(lo, coeffs),
                });
            }
            sections.push(Section { family, entries });
        }
        Ok(TableFile { header, sections })
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], TableFileError> {
        let end = self.at.checked_add(n).ok_or(TableFileError::Truncated)?;
        let out = self
            .bytes
            .get(self.at..end)
            .ok_or(TableFileError::Truncated)?;
        self.at = end;
        Ok(out)
    }

    fn u32(&mut self) -> Result<u32, TableFileError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, TableFileError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}
