use std::io::{self, BufWriter, Write};

fn main() {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut err = io::stderr().lock();
    let mut code = prodgeom_cli::run(std::env::args_os(), &mut out, &mut err);
    if let Err(e) = out.flush() {
        let _ = writeln!(err, "error: writing output: {e}");
        code = code.max(prodgeom_cli::EXIT_DOMAIN);
    }
    std::process::exit(code);
}
