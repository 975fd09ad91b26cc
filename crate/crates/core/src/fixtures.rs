//! Named example inputs shipped with the crate.

use crate::error::{Error, Result};
use crate::series::SeriesFile;

pub const NAMES: [&str; 7] = ["fig1", "fig2", "fig3", "fig4", "remark", "node", "cusp"];

pub fn text(name: &str) -> Option<&'static str> {
    Some(match name {
        "fig1" => include_str!("../fixtures/fig1.series"),
        "fig2" => include_str!("../fixtures/fig2.series"),
        "fig3" => include_str!("../fixtures/fig3.series"),
        "fig4" => include_str!("../fixtures/fig4.series"),
        "remark" => include_str!("../fixtures/remark.series"),
        "node" => include_str!("../fixtures/node.series"),
        "cusp" => include_str!("../fixtures/cusp.series"),
        _ => return None,
    })
}

pub fn load(name: &str) -> Result<SeriesFile> {
    let t = text(name).ok_or_else(|| Error::Precondition(format!("no fixture named '{name}'")))?;
    SeriesFile::parse(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_parse() {
        for n in NAMES {
            let f = load(n).unwrap();
            assert!(!f.series.is_zero(), "{n}");
        }
        assert_eq!(load("node").unwrap().vars.names(), ["x", "y"]);
        assert_eq!(load("remark").unwrap().series.n(), 3);
    }
}
