use std::io::Write;

fn main() {
    let (stdout, stderr, code) = posmap_cli::run(std::env::args_os());
    if !stdout.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(stdout.as_bytes());
        let _ = out.flush();
    }
    if let Some(msg) = stderr {
        eprintln!("{msg}");
    }
    std::process::exit(code);
}
