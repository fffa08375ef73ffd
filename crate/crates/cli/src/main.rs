use std::io::Write;

fn main() {
    let budget = std::env::var(toric_kit_cli::BUDGET_ENV).ok();
    let out = toric_kit_cli::run(std::env::args_os(), budget.as_deref());
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
