//! Named cable links used throughout the examples and tests.

use crate::cables::{classify, CableLink};
use crate::error::{Error, Result};
use crate::knots::LSpaceKnot;

/// A named link: companion knot and cable parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub knot: LSpaceKnot,
    pub r: usize,
    pub m: i64,
    pub n: i64,
    pub caption: String,
}

impl Preset {
    pub fn link(&self) -> Result<CableLink> {
        classify(&self.knot, self.r, self.m, self.n)
    }
}

/// Names accepted by [`preset`], besides the `T<n><n>` family.
pub const NAMED: &[&str] = &["T22", "T33", "T46", "T69", "CABLE-TREFOIL-46", "TREFOIL-22"];

fn make(name: &str, knot: LSpaceKnot, r: usize, m: i64, n: i64, caption: &str) -> Preset {
    Preset {
        name: name.into(),
        knot,
        r,
        m,
        n,
        caption: caption.into(),
    }
}

/// `T(n,n)` as an `n`-component cable of the unknot.
pub fn torus_nn(n: usize) -> Result<Preset> {
    if !(1..=crate::cables::MAX_COMPONENTS).contains(&n) {
        return Err(Error::Unsupported(format!("T({n},{n})")));
    }
    Ok(make(
        &format!("T{n}{n}"),
        LSpaceKnot::unknot(),
        n,
        1,
        1,
        &format!("the ({n},{n}) torus link"),
    ))
}

/// Looks up a preset by name (case-insensitive).
pub fn preset(name: &str) -> Result<Preset> {
    let up = name.trim().to_ascii_uppercase();
    let unknot = LSpaceKnot::unknot;
    Ok(match up.as_str() {
        "T22" | "HOPF" => make("T22", unknot(), 2, 1, 1, "the (2,2) torus link"),
        "T33" => make("T33", unknot(), 3, 1, 1, "the (3,3) torus link"),
        "T46" => make("T46", unknot(), 2, 2, 3, "the (4,6) torus link"),
        "T69" => make("T69", unknot(), 3, 2, 3, "the (6,9) torus link"),
        "CABLE-TREFOIL-46" => make(
            "CABLE-TREFOIL-46",
            LSpaceKnot::trefoil(),
            2,
            2,
            3,
            "the (4,6) cable of the trefoil",
        ),
        "TREFOIL-22" => make(
            "TREFOIL-22",
            LSpaceKnot::trefoil(),
            2,
            1,
            1,
            "the (2,2) cable of the trefoil",
        ),
        _ => {
            let digits = up.strip_prefix('T').filter(|d| !d.is_empty() && d.len() % 2 == 0);
            match digits {
                Some(d) if d[..d.len() / 2] == d[d.len() / 2..] => {
                    let n: usize = d[..d.len() / 2]
                        .parse()
                        .map_err(|_| Error::Parse(format!("unknown preset {name}")))?;
                    torus_nn(n)?
                }
                _ => return Err(Error::Parse(format!("unknown preset {name}"))),
            }
        }
    })
}
