use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use ladderflow::ladder::LadderSpec;
use ladderflow::signed::GraphJson;
use ladderflow::solver::Flow;
use ladderflow::SignedGraph;
use serde::de::DeserializeOwned;

/// A parsed input file: a general signed graph or a ladder description.
pub enum Input {
    Graph(SignedGraph),
    Ladder(LadderSpec),
}

impl Input {
    pub fn graph(&self) -> SignedGraph {
        match self {
            Input::Graph(g) => g.clone(),
            Input::Ladder(s) => s.build(),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        anyhow!(
            "{}:{}:{}: {}",
            path.display(),
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        )
    })
}

fn strip_position(msg: &str) -> &str {
    msg.rsplit_once(" at line ").map_or(msg, |(head, _)| head)
}

pub fn read_input(path: &Path) -> Result<Input> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| anyhow!("{}: expected a JSON object", path.display()))?;
    if obj.contains_key("kind") {
        Ok(Input::Ladder(parse(path, &text)?))
    } else if obj.contains_key("vertices") {
        let j: GraphJson = parse(path, &text)?;
        let g = SignedGraph::try_from(j).with_context(|| path.display().to_string())?;
        Ok(Input::Graph(g))
    } else {
        bail!(
            "{}: neither a graph (\"vertices\", \"edges\") nor a ladder (\"kind\", \"n\", ...)",
            path.display()
        )
    }
}

/// A bare `{"k", "values"}` certificate or any object carrying one under
/// `"flow"`, as printed by `solve`.
pub fn read_certificate(path: &Path) -> Result<Flow> {
    let text = read_text(path)?;
    let value: serde_json::Value = parse(path, &text)?;
    match value.get("flow") {
        Some(serde_json::Value::Null) => bail!("{}: certificate holds no flow", path.display()),
        Some(flow) => serde_json::from_value(flow.clone())
            .map_err(|e| anyhow!("{}: invalid flow: {e}", path.display())),
        None => parse(path, &text),
    }
}
