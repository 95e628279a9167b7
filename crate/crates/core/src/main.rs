use std::io::{BufWriter, Write};

fn main() {
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = std::io::stderr();
    let code = hilbert_cubes::cli::run(std::env::args().skip(1), &mut out, &mut err);
    if out.flush().is_err() && code == 0 {
        std::process::exit(1);
    }
    std::process::exit(code);
}
