use std::path::PathBuf;
use std::str::FromStr;

pub const MAX_Q_G2_CAP: u64 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

impl FromStr for Threads {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Threads::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Threads::Fixed(n)),
            _ => Err(format!("threads must be a positive integer or \"auto\", got {s:?}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub cache_dir: PathBuf,
    pub max_q_g2: u64,
    pub precision_bits: u32,
    pub enable_char2: bool,
    pub threads: Threads,
}

impl Config {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_q_g2 > MAX_Q_G2_CAP {
            return Err(format!("max_q_g2 = {} exceeds the hard cap {MAX_Q_G2_CAP}", self.max_q_g2));
        }
        if self.max_q_g2.is_multiple_of(2) && !self.enable_char2 {
            return Err(format!("max_q_g2 = {} is even; pass --enable-char2 to allow it", self.max_q_g2));
        }
        if self.precision_bits < 128 {
            return Err(format!("precision_bits = {} is below 128", self.precision_bits));
        }
        Ok(())
    }
}
