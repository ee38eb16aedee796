use std::io::Write as _;

fn main() {
    let out = borsuk_cli::run(std::env::args_os());
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stderr.write_all(out.stderr.as_bytes());
    let _ = stdout.flush();
    let _ = stderr.flush();
    std::process::exit(out.code);
}
