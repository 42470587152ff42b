fn main() {
    // Placeholder; subcommands are wired up once the core pipeline lands.
    eprintln!("nisq-smtc: not yet wired");
    std::process::exit(1);
}
