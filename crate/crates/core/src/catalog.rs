//! Constructors for the named groups of the verification catalog:
//! alternating, symmetric, cyclic, dihedral, PSL(2,q)/PGL(2,q)/PΓL(2,q)
//! on the projective line, direct products and cyclic-top wreath powers.

use std::sync::OnceLock;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::field::{field, Field};
use crate::group::products::{direct_product, power_wreath};
use crate::group::Group;
use crate::perm::{Permutation, Point};

/// One row of the shipped catalog manifest.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub key: String,
    pub spec: String,
    pub expected_order: u64,
    pub simple: bool,
    /// Defining characteristic for groups of Lie type.
    pub lie_characteristic: Option<u64>,
    /// Member of the exceptional-socle list {A5, A5×A5, PSL(2,7), PSL(2,16)}.
    pub exception_list: bool,
}

const MANIFEST_TEXT: &str = include_str!("../data/catalog.txt");

/// The shipped catalog manifest, parsed once.
pub fn manifest() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| parse_manifest(MANIFEST_TEXT).expect("shipped manifest is well-formed"))
}

pub fn manifest_entry(key: &str) -> Option<&'static CatalogEntry> {
    manifest().iter().find(|e| e.key == key)
}

fn parse_manifest(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected `key spec order flags`, got {} fields", fields.len()),
            });
        }
        let expected_order = fields[2].parse().map_err(|_| Error::Parse {
            line: lineno + 1,
            message: format!("bad order `{}`", fields[2]),
        })?;
        let mut entry = CatalogEntry {
            key: fields[0].to_string(),
            spec: fields[1].to_string(),
            expected_order,
            simple: false,
            lie_characteristic: None,
            exception_list: false,
        };
        if fields[3] != "-" {
            for flag in fields[3].split(',') {
                match flag {
                    "simple" => entry.simple = true,
                    "exception" => entry.exception_list = true,
                    _ => match flag.strip_prefix("char:") {
                        Some(p) => {
                            entry.lie_characteristic =
                                Some(p.parse().map_err(|_| Error::Parse {
                                    line: lineno + 1,
                                    message: format!("bad characteristic `{}`", flag),
                                })?)
                        }
                        None => {
                            return Err(Error::Parse {
                                line: lineno + 1,
                                message: format!("unknown flag `{}`", flag),
                            })
                        }
                    },
                }
            }
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// Builds a catalog group by manifest key (`A5`, `PSL2_7`, …) or by a
/// builder spec (`alternating(5)`, `product(C2,A5)`, `wreath(A5,2)`).
pub fn build(name: &str, caps: &Caps) -> Result<Group> {
    if let Some(entry) = manifest_entry(name) {
        let group = build_spec(&entry.spec, caps)?;
        assert_eq!(
            group.order(),
            entry.expected_order,
            "catalog entry {} has unexpected order",
            entry.key
        );
        return Ok(group);
    }
    build_spec(name, caps)
}

/// Grammar: `trivial` | `klein4` | `cyclic(n)` | `symmetric(n)` |
/// `alternating(n)` | `dihedral(n)` | `psl2(q)` | `pgl2(q)` |
/// `pgammal2(q)` | `product(spec,spec)` | `wreath(spec,k)`; manifest
/// keys are allowed anywhere a spec is.
pub fn build_spec(spec: &str, caps: &Caps) -> Result<Group> {
    let spec = spec.trim();
    if let Some(entry) = manifest_entry(spec) {
        if entry.spec != spec {
            return build_spec(&entry.spec, caps);
        }
    }
    match spec {
        "trivial" => return Ok(Group::trivial(1, caps)),
        "klein4" => return klein4(caps),
        _ => {}
    }
    let (head, args) = split_call(spec)?;
    let int_arg = |s: &str| -> Result<u64> {
        s.trim()
            .parse()
            .map_err(|_| Error::UnknownCatalogEntry(spec.to_string()))
    };
    match (head, args.as_slice()) {
        ("cyclic", [n]) => cyclic(int_arg(n)? as usize, caps),
        ("symmetric", [n]) => symmetric(int_arg(n)? as usize, caps),
        ("alternating", [n]) => alternating(int_arg(n)? as usize, caps),
        ("dihedral", [n]) => dihedral(int_arg(n)? as usize, caps),
        ("psl2", [q]) => psl2(int_arg(q)?, caps),
        ("pgl2", [q]) => pgl2(int_arg(q)?, caps),
        ("pgammal2", [q]) => pgammal2(int_arg(q)?, caps),
        ("product", [a, b]) => {
            let left = build_spec(a, caps)?;
            let right = build_spec(b, caps)?;
            Ok(direct_product(&left, &right, caps)?.group)
        }
        ("wreath", [l, k]) => {
            let base = build_spec(l, caps)?;
            let k = int_arg(k)? as usize;
            let top = cyclic(k, caps)?;
            Ok(power_wreath(&base, k, &top, caps)?.group)
        }
        _ => Err(Error::UnknownCatalogEntry(spec.to_string())),
    }
}

/// Splits `head(arg1,arg2)` with nesting-aware commas.
fn split_call(spec: &str) -> Result<(&str, Vec<&str>)> {
    let open = spec
        .find('(')
        .ok_or_else(|| Error::UnknownCatalogEntry(spec.to_string()))?;
    if !spec.ends_with(')') {
        return Err(Error::UnknownCatalogEntry(spec.to_string()));
    }
    let head = &spec[..open];
    let inner = &spec[open + 1..spec.len() - 1];
    let mut args = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                args.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !inner.is_empty() {
        args.push(&inner[start..]);
    }
    Ok((head, args))
}

pub fn cyclic(n: usize, caps: &Caps) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group needs n ≥ 1".into()));
    }
    let cycle: Vec<Point> = (0..n as Point).collect();
    Group::from_generators(vec![Permutation::from_cycles(n, &[cycle])?], caps)
}

pub fn symmetric(n: usize, caps: &Caps) -> Result<Group> {
    if n <= 1 {
        return Ok(Group::trivial(n.max(1), caps));
    }
    let transposition = Permutation::from_cycles(n, &[vec![0, 1]])?;
    let cycle = Permutation::from_cycles(n, &[(0..n as Point).collect()])?;
    Group::from_generators(vec![transposition, cycle], caps)
}

pub fn alternating(n: usize, caps: &Caps) -> Result<Group> {
    if n <= 2 {
        return Ok(Group::trivial(n.max(1), caps));
    }
    let three_cycle = Permutation::from_cycles(n, &[vec![0, 1, 2]])?;
    if n == 3 {
        return Group::from_generators(vec![three_cycle], caps);
    }
    // an n-cycle for odd n, an (n−1)-cycle fixing 0 for even n
    let big = if n % 2 == 1 {
        Permutation::from_cycles(n, &[(0..n as Point).collect()])?
    } else {
        Permutation::from_cycles(n, &[(1..n as Point).collect()])?
    };
    Group::from_generators(vec![three_cycle, big], caps)
}

/// Symmetries of the regular n-gon: order 2n.
pub fn dihedral(n: usize, caps: &Caps) -> Result<Group> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "dihedral group needs n ≥ 3 vertices".into(),
        ));
    }
    let rotation = Permutation::from_cycles(n, &[(0..n as Point).collect()])?;
    let reflection_images: Vec<Point> = (0..n as Point)
        .map(|i| (n as Point - i) % n as Point)
        .collect();
    let reflection = Permutation::from_images(reflection_images)?;
    Group::from_generators(vec![rotation, reflection], caps)
}

pub fn klein4(caps: &Caps) -> Result<Group> {
    Group::from_generators(
        vec![
            Permutation::from_cycles(4, &[vec![0, 1], vec![2, 3]])?,
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]])?,
        ],
        caps,
    )
}

/// Projective line over GF(q): point 0 is ∞, point 1+v is the field
/// element of value v.
fn projective_map(f: &Field, map: impl Fn(Option<u64>) -> Option<u64>) -> Permutation {
    let q = f.q();
    let encode = |z: Option<u64>| -> Point {
        match z {
            None => 0,
            Some(v) => 1 + v as Point,
        }
    };
    let mut images = vec![0; q as usize + 1];
    images[0] = encode(map(None));
    for v in 0..q {
        images[1 + v as usize] = encode(map(Some(v)));
    }
    Permutation::from_images_unchecked(images)
}

fn projective_generators(q: u64, multiplier_is_square: bool) -> Result<Vec<Permutation>> {
    let f = field(q)?;
    let a = f.primitive_element();
    let m = if multiplier_is_square { f.mul(a, a) } else { a };
    let translation = projective_map(f, |z| z.map(|v| f.add(v, 1)));
    let scaling = projective_map(f, |z| z.map(|v| f.mul(m, v)));
    let inversion = projective_map(f, |z| match z {
        None => Some(0),
        Some(0) => None,
        Some(v) => Some(f.neg(f.inv(v).expect("nonzero"))),
    });
    Ok(vec![translation, scaling, inversion])
}

/// PSL(2,q) on the q+1 projective-line points: z ↦ z+1, z ↦ a²z
/// (a² scaling keeps determinants square), z ↦ −1/z.
pub fn psl2(q: u64, caps: &Caps) -> Result<Group> {
    Group::from_generators(projective_generators(q, true)?, caps)
}

/// PGL(2,q): as psl2 but scaling by the primitive element itself.
/// Coincides with PSL(2,q) for even q.
pub fn pgl2(q: u64, caps: &Caps) -> Result<Group> {
    Group::from_generators(projective_generators(q, false)?, caps)
}

/// PΓL(2,q): PGL(2,q) extended by the Frobenius field automorphism.
pub fn pgammal2(q: u64, caps: &Caps) -> Result<Group> {
    let f = field(q)?;
    let mut gens = projective_generators(q, false)?;
    gens.push(projective_map(f, |z| z.map(|v| f.frobenius(v))));
    Group::from_generators(gens, caps)
}
