//! Agent checkpoints: a binary weight blob plus a JSON sidecar.
//!
//! Blob layout (little-endian): `RLQAS1`, u32 format version, u32 network
//! count, then per network a u32 layer count, `(n_in, n_out)` u32 pairs and
//! the f64 weights and biases layer by layer. Online net first, then target.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use super::dqn::{AgentConfig, DdqnAgent};
use super::network::{Layer, QNetwork};
use super::AgentError;
use crate::qcore::QRng;

pub const MAGIC: &[u8; 6] = b"RLQAS1";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub format_version: u32,
    pub config: AgentConfig,
    pub layer_sizes: Vec<usize>,
    pub steps: u64,
    pub updates: u64,
    pub epsilon: f64,
    /// Policy RNG position so a resumed run continues the same stream.
    pub rng_seed: String,
    pub rng_stream: u64,
    pub rng_word_pos: String,
    #[serde(default)]
    pub extra: serde_json::Value,
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn write_net<W: Write>(w: &mut W, net: &QNetwork) -> std::io::Result<()> {
    w.write_u32::<LittleEndian>(net.layers().len() as u32)?;
    for l in net.layers() {
        w.write_u32::<LittleEndian>(l.n_in as u32)?;
        w.write_u32::<LittleEndian>(l.n_out as u32)?;
    }
    for l in net.layers() {
        for &x in l.w.iter().chain(&l.b) {
            w.write_f64::<LittleEndian>(x)?;
        }
    }
    Ok(())
}

fn read_net<R: Read>(r: &mut R, expected: &[usize]) -> Result<QNetwork, AgentError> {
    let n_layers = r.read_u32::<LittleEndian>()? as usize;
    let mut shapes = Vec::with_capacity(n_layers.min(64));
    for _ in 0..n_layers {
        let n_in = r.read_u32::<LittleEndian>()? as usize;
        let n_out = r.read_u32::<LittleEndian>()? as usize;
        shapes.push((n_in, n_out));
    }
    let mut sizes: Vec<usize> = shapes.first().map(|s| vec![s.0]).unwrap_or_default();
    sizes.extend(shapes.iter().map(|s| s.1));
    if sizes != expected {
        return Err(AgentError::ShapeMismatch {
            expected: expected.to_vec(),
            found: sizes,
        });
    }
    let mut layers = Vec::with_capacity(n_layers);
    for (n_in, n_out) in shapes {
        let mut read = |n: usize| -> Result<Vec<f64>, AgentError> {
            let mut v = vec![0.0; n];
            r.read_f64_into::<LittleEndian>(&mut v)?;
            Ok(v)
        };
        let w = read(n_in * n_out)?;
        let b = read(n_out)?;
        layers.push(Layer { n_in, n_out, w, b });
    }
    QNetwork::from_layers(layers)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn unhex(s: &str) -> Option<[u8; 32]> {
    if s.len() != 64 {
        return None;
    }
    let mut out = [0u8; 32];
    for (i, o) in out.iter_mut().enumerate() {
        *o = u8::from_str_radix(&s[2 * i..2 * i + 2], 16).ok()?;
    }
    Some(out)
}

pub fn save_checkpoint(agent: &DdqnAgent, path: &Path, extra: serde_json::Value) -> Result<(), AgentError> {
    let mut w = BufWriter::new(File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_u32::<LittleEndian>(FORMAT_VERSION)?;
    w.write_u32::<LittleEndian>(2)?;
    write_net(&mut w, &agent.online)?;
    write_net(&mut w, &agent.target)?;
    w.flush()?;

    let rng = agent.rng();
    let sidecar = Sidecar {
        format_version: FORMAT_VERSION,
        config: agent.config.clone(),
        layer_sizes: agent.online.sizes(),
        steps: agent.steps(),
        updates: agent.updates(),
        epsilon: agent.epsilon.value,
        rng_seed: hex(&rng.get_seed()),
        rng_stream: rng.get_stream(),
        rng_word_pos: rng.get_word_pos().to_string(),
        extra,
    };
    let json = serde_json::to_string_pretty(&sidecar).map_err(|e| AgentError::Checkpoint(e.to_string()))?;
    std::fs::write(sidecar_path(path), json)?;
    Ok(())
}

/// Restores networks, counters, ε and the policy RNG. The replay buffer and
/// ADAM moments start fresh.
pub fn load_checkpoint(path: &Path, expected_sizes: &[usize]) -> Result<(DdqnAgent, Sidecar), AgentError> {
    let text = std::fs::read_to_string(sidecar_path(path))?;
    let sidecar: Sidecar = serde_json::from_str(&text).map_err(|e| AgentError::Checkpoint(e.to_string()))?;
    if sidecar.layer_sizes != expected_sizes {
        return Err(AgentError::ShapeMismatch {
            expected: expected_sizes.to_vec(),
            found: sidecar.layer_sizes,
        });
    }
    let mut r = BufReader::new(File::open(path)?);
    let mut magic = [0u8; 6];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(AgentError::Checkpoint("bad magic bytes".into()));
    }
    let version = r.read_u32::<LittleEndian>()?;
    if version != FORMAT_VERSION {
        return Err(AgentError::Checkpoint(format!("unsupported format version {version}")));
    }
    if r.read_u32::<LittleEndian>()? != 2 {
        return Err(AgentError::Checkpoint("expected two networks".into()));
    }
    let online = read_net(&mut r, expected_sizes)?;
    let target = read_net(&mut r, expected_sizes)?;

    let seed = unhex(&sidecar.rng_seed).ok_or_else(|| AgentError::Checkpoint("bad rng seed".into()))?;
    let word_pos: u128 = sidecar
        .rng_word_pos
        .parse()
        .map_err(|_| AgentError::Checkpoint("bad rng position".into()))?;
    let mut rng = QRng::from_seed(seed);
    rng.set_stream(sidecar.rng_stream);
    rng.set_word_pos(word_pos);

    let mut agent = DdqnAgent::with_network(online, sidecar.config.clone(), 0);
    agent.target = target;
    agent.epsilon.value = sidecar.epsilon;
    agent.set_counters(sidecar.steps, sidecar.updates);
    agent.set_rng(rng);
    Ok((agent, sidecar))
}
