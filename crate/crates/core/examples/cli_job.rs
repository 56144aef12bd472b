// Running a command-line job from code.

use toric_arith::cli::{run_job, Command, JobSpec, OutputOptions, Payload};

fn main() -> toric_arith::Result<()> {
    let payload = Payload::parse(
        r#"
        exponents = [[0, 0], [1, 0], [2, 1], [1, 2]]
        coefficients = [1, 1, 3, 1]
        "#,
    )?;
    for command in [Command::Kernel, Command::Ideal, Command::Height] {
        let job = JobSpec {
            command,
            payload: payload.clone(),
            options: OutputOptions::default(),
        };
        print!("{}", run_job(&job)?.render_text(12));
    }
    Ok(())
}
