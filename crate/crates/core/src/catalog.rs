//! Knots used throughout: the built-in catalog and user-supplied inputs.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, UnitClass};
use crate::presentation::Presentation;
use crate::twisted::classical_alexander;

/// A knot group presentation together with what is known about the knot.
#[derive(Clone, Debug)]
pub struct Knot {
    pub name: String,
    pub presentation: Presentation,
    /// Needed for the degree check; unknown for raw presentations.
    pub genus: Option<u32>,
    pub fibered: Option<bool>,
}

/// A knot given as a braid closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotEntry {
    pub name: String,
    pub strands: usize,
    pub braid: Vec<i32>,
    pub genus: u32,
    pub fibered: bool,
    pub classical_alexander: UnitClass<BigInt>,
}

impl KnotEntry {
    pub fn presentation(&self) -> Result<Presentation> {
        Presentation::wirtinger_from_braid(&self.braid, self.strands)
    }

    pub fn knot(&self) -> Result<Knot> {
        Ok(Knot {
            name: self.name.clone(),
            presentation: self.presentation()?,
            genus: Some(self.genus),
            fibered: Some(self.fibered),
        })
    }

    /// Parses `name; strands; comma-separated braid letters; genus; fibered_flag`.
    /// The Alexander polynomial is computed from the braid.
    pub fn parse_line(line: &str) -> Result<Self> {
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(Error::Parse(format!("expected 5 `;`-separated fields in `{}`", line)));
        }
        let int = |s: &str| -> Result<i64> {
            s.parse().map_err(|_| Error::Parse(format!("bad integer `{}`", s)))
        };
        let strands = int(fields[1])?;
        if strands < 1 {
            return Err(Error::Parse("strand count must be positive".into()));
        }
        let braid = fields[2]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| int(s).map(|v| v as i32))
            .collect::<Result<Vec<_>>>()?;
        let genus = int(fields[3])?;
        if genus < 0 {
            return Err(Error::Parse("genus must be nonnegative".into()));
        }
        let fibered = match fields[4].to_ascii_lowercase().as_str() {
            "1" | "true" | "yes" | "fibered" => true,
            "0" | "false" | "no" | "nonfibered" => false,
            other => return Err(Error::Parse(format!("bad fibered flag `{}`", other))),
        };
        let mut entry = KnotEntry {
            name: fields[0].to_string(),
            strands: strands as usize,
            braid,
            genus: genus as u32,
            fibered,
            classical_alexander: UnitClass::of(&LaurentPoly::one()),
        };
        entry.classical_alexander = classical_alexander(&entry.presentation()?)?;
        Ok(entry)
    }

    /// Parses a knot file: one entry per line, `#` comments and blank lines ignored.
    pub fn parse_file(text: &str) -> Result<Vec<Self>> {
        text.lines()
            .map(|l| l.split('#').next().unwrap().trim())
            .filter(|l| !l.is_empty())
            .map(Self::parse_line)
            .collect()
    }

    pub fn to_line(&self) -> String {
        let b: Vec<String> = self.braid.iter().map(|x| x.to_string()).collect();
        format!("{}; {}; {}; {}; {}", self.name, self.strands, b.join(","), self.genus, self.fibered)
    }

    pub fn summary(&self) -> KnotSummary {
        KnotSummary {
            name: self.name.clone(),
            strands: self.strands,
            braid: self.braid.clone(),
            genus: self.genus,
            fibered: self.fibered,
            alexander: self.classical_alexander.to_string(),
        }
    }
}

/// Wire form of a catalog row.
#[derive(Clone, Debug, Serialize)]
pub struct KnotSummary {
    pub name: String,
    pub strands: usize,
    pub braid: Vec<i32>,
    pub genus: u32,
    pub fibered: bool,
    pub alexander: String,
}

// name, strands, braid, genus, fibered, Alexander polynomial
const RAW: &[(&str, usize, &[i32], u32, bool, &str)] = &[
    ("unknot", 1, &[], 0, true, "1*t^0"),
    ("3_1", 2, &[1, 1, 1], 1, true, "1*t^0 + -1*t^1 + 1*t^2"),
    ("4_1", 3, &[1, -2, 1, -2], 1, true, "1*t^0 + -3*t^1 + 1*t^2"),
    ("5_1", 2, &[1, 1, 1, 1, 1], 2, true, "1*t^0 + -1*t^1 + 1*t^2 + -1*t^3 + 1*t^4"),
    ("5_2", 3, &[1, 1, 1, 2, -1, 2], 1, false, "2*t^0 + -3*t^1 + 2*t^2"),
    ("6_1", 4, &[1, 1, 2, -1, -3, 2, -3], 1, false, "2*t^0 + -5*t^1 + 2*t^2"),
];

/// The built-in knots. Each braid is checked against its stored Alexander
/// polynomial on first use; a mismatch is a bug and panics.
pub fn catalog() -> &'static [KnotEntry] {
    static CATALOG: OnceLock<Vec<KnotEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        RAW.iter()
            .map(|&(name, strands, braid, genus, fibered, alex)| {
                let expected: LaurentPoly<BigInt> = alex.parse().expect("catalog polynomial");
                let entry = KnotEntry {
                    name: name.to_string(),
                    strands,
                    braid: braid.to_vec(),
                    genus,
                    fibered,
                    classical_alexander: expected.unit_class(),
                };
                let pres = entry.presentation().expect("catalog braid closes to a knot");
                let computed = classical_alexander::<BigInt>(&pres).expect("catalog Alexander polynomial");
                assert_eq!(
                    computed, entry.classical_alexander,
                    "catalog entry {} disagrees with its braid",
                    name
                );
                entry
            })
            .collect()
    })
}

pub fn lookup(name: &str) -> Result<&'static KnotEntry> {
    catalog().iter().find(|k| k.name == name).ok_or_else(|| Error::UnknownKnot(name.to_string()))
}
