use std::process::ExitCode;

fn main() -> ExitCode {
    let (done, cli) = cubisect_cli::run(std::env::args_os());
    let pretty = cli.as_ref().is_some_and(|c| c.common.pretty);
    let text = match done.report.get("usage").and_then(|u| u.as_str()) {
        Some(usage) if done.code == 0 => usage.to_string(),
        _ => done.render(pretty),
    };
    if done.code >= 2 {
        if let Some(msg) = done.report.pointer("/error/message").or_else(|| done.report.get("usage")).and_then(|m| m.as_str()) {
            eprintln!("cubisect: {}", msg.trim_end());
        }
    }
    match cli.as_ref().and_then(|c| c.common.out.as_ref()) {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("cubisect: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(done.code as u8)
}
