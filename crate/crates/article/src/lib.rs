//! Reader, stack machine, and canonical writer for OpenTheory articles
//! (versions 5 and 6).

mod command;
mod emit;
mod error;
mod lower;
mod object;
mod vm;

use std::fs::File;
use std::io::{BufReader, Read};
use std::path::Path;

pub use command::{parse_line, Command, Line, Opcode};
pub use emit::emit_article;
pub use error::{ArticleError, ErrorKind};
pub use lower::{collapsible, is_root_rule, lower, uses_v6_expressible_rules};
pub use object::Object;
pub use vm::{replay, replay_reader, ArticleResult, Export, Machine, Mode, ReplayOptions};

/// Reads an article file, decompressing `.gz` files.
pub fn read_article(path: &Path) -> Result<String, ArticleError> {
    let io = |e: std::io::Error| ArticleError::new(0, ErrorKind::Io(format!("{}: {e}", path.display())));
    let file = File::open(path).map_err(io)?;
    let mut text = String::new();
    if path.extension().is_some_and(|e| e == "gz") {
        flate2::read::MultiGzDecoder::new(BufReader::new(file)).read_to_string(&mut text).map_err(io)?;
    } else {
        BufReader::new(file).read_to_string(&mut text).map_err(io)?;
    }
    Ok(text)
}

pub fn replay_path(path: &Path, opts: &ReplayOptions) -> Result<ArticleResult, ArticleError> {
    replay(&read_article(path)?, opts)
}

/// Runs `f` on a thread with a large stack. Proof traces and terms are
/// walked recursively and real articles can be deep.
pub fn with_large_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(512 << 20)
            .spawn_scoped(s, f)
            .expect("spawn worker thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}
