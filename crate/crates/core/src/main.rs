use std::io::IsTerminal;

fn main() {
    let stdout = std::io::stdout();
    let terminal = stdout.is_terminal();
    let code = kshadow::cli::run(
        std::env::args_os(),
        &mut stdout.lock(),
        &mut std::io::stderr().lock(),
        terminal,
    );
    std::process::exit(code);
}
