//! The group text format.
//!
//! Line 1: `degree n`. Every following non-comment line is one
//! generator, given as n space-separated integers: the images of points
//! 1..n (1-based in files, 0-based in memory). `#` starts a comment
//! line. Serialization emits the generators sorted lexicographically by
//! image sequence, so `parse(serialize(G))` reproduces the generator
//! set exactly.

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::{Permutation, Point};

pub fn parse_group(text: &str, caps: &Caps) -> Result<Group> {
    let mut degree: Option<usize> = None;
    let mut generators: Vec<Permutation> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match degree {
            None => {
                let rest = line.strip_prefix("degree").ok_or(Error::Parse {
                    line: lineno,
                    message: "expected `degree n` on the first line".into(),
                })?;
                let n: usize = rest.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("bad degree `{}`", rest.trim()),
                })?;
                if n == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "degree must be positive".into(),
                    });
                }
                degree = Some(n);
            }
            Some(n) => {
                let mut images: Vec<Point> = Vec::with_capacity(n);
                for token in line.split_whitespace() {
                    let v: u64 = token.parse().map_err(|_| Error::Parse {
                        line: lineno,
                        message: format!("bad image `{}`", token),
                    })?;
                    if v == 0 || v > n as u64 {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("image {} out of range 1..={}", v, n),
                        });
                    }
                    images.push((v - 1) as Point);
                }
                if images.len() != n {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("expected {} images, got {}", n, images.len()),
                    });
                }
                let perm = Permutation::from_images(images).map_err(|e| Error::Parse {
                    line: lineno,
                    message: e.to_string(),
                })?;
                generators.push(perm);
            }
        }
    }
    match degree {
        None => Err(Error::Parse {
            line: 1,
            message: "missing `degree n` line".into(),
        }),
        Some(_) if generators.is_empty() => Err(Error::Parse {
            line: 1,
            message: "no generator lines".into(),
        }),
        Some(_) => Group::from_generators(generators, caps),
    }
}

pub fn serialize_group(g: &Group) -> String {
    let mut out = format!("degree {}\n", g.degree());
    let mut gens: Vec<&Permutation> = g.generators().iter().collect();
    gens.sort();
    for gen in gens {
        let row: Vec<String> = gen.images().iter().map(|&v| (v + 1).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
