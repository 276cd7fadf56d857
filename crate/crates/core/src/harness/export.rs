//! CSV and SVG export. Floats are written with Rust's shortest round-trip
//! formatting, so identical results produce identical bytes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{rank_algorithms, render_convergence_svg, ExperimentResult, RankingTable};
use crate::algorithms::RunResult;
use crate::error::{Error, Result};

fn flush<W: Write>(w: csv::Writer<W>) -> Result<()> {
    w.into_inner()
        .map_err(|e| Error::io("<csv>", e.into_error()))?
        .flush()
        .map_err(|e| Error::io("<csv>", e))
}

/// Long form: `problem,size_N,algorithm,run_seed,best_fitness`, one row per run.
pub fn write_runs_csv<W: Write>(result: &ExperimentResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["problem", "size_N", "algorithm", "run_seed", "best_fitness"])?;
    for cell in &result.cells {
        for run in cell.runs() {
            w.write_record([
                cell.problem.clone(),
                cell.size_n.to_string(),
                cell.algorithm.clone(),
                run.seed.to_string(),
                run.best_fitness.to_string(),
            ])?;
        }
    }
    flush(w)
}

/// Aggregate form: `problem,algorithm,mean,std,min,max,wins`, where `wins`
/// is 1 when the algorithm had the best mean on that problem.
pub fn write_summary_csv<W: Write>(
    result: &ExperimentResult,
    ranking: &RankingTable,
    out: W,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["problem", "algorithm", "mean", "std", "min", "max", "wins"])?;
    for cell in &result.cells {
        let Some(s) = cell.summary() else { continue };
        let win = ranking.is_winner(cell.problem_index, &cell.algorithm);
        w.write_record([
            cell.problem.clone(),
            cell.algorithm.clone(),
            s.mean.to_string(),
            s.std.to_string(),
            s.min.to_string(),
            s.max.to_string(),
            u8::from(win).to_string(),
        ])?;
    }
    flush(w)
}

/// `rank,algorithm,wins,tied_wins`.
pub fn write_ranking_csv<W: Write>(ranking: &RankingTable, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rank", "algorithm", "wins", "tied_wins"])?;
    for (rank, e) in ranking.ranks().into_iter().zip(&ranking.entries) {
        w.write_record([
            rank.to_string(),
            e.algorithm.clone(),
            e.wins.to_string(),
            e.tied_wins.to_string(),
        ])?;
    }
    flush(w)
}

/// `evaluation,best_so_far` for a single run, evaluations counted from 1.
pub fn write_trajectory_csv<W: Write>(run: &RunResult, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["evaluation", "best_so_far"])?;
    for (i, v) in run.trajectory.iter().enumerate() {
        w.write_record([(i + 1).to_string(), v.to_string()])?;
    }
    flush(w)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExportedFiles {
    pub runs: PathBuf,
    pub summary: PathBuf,
    pub ranking: PathBuf,
    pub convergence: Vec<PathBuf>,
    pub failures: Option<PathBuf>,
}

fn slug(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Writes `runs.csv`, `summary.csv`, `ranking.csv`, one
/// `convergence_<NN>_<problem>.svg` per problem with completed cells, and
/// `failures.txt` when any cell failed.
pub fn export_all(result: &ExperimentResult, dir: impl AsRef<Path>) -> Result<ExportedFiles> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let ranking = rank_algorithms(result);

    let mut files = ExportedFiles {
        runs: dir.join("runs.csv"),
        summary: dir.join("summary.csv"),
        ranking: dir.join("ranking.csv"),
        ..ExportedFiles::default()
    };
    write_runs_csv(result, create(&files.runs)?)?;
    write_summary_csv(result, &ranking, create(&files.summary)?)?;
    write_ranking_csv(&ranking, create(&files.ranking)?)?;

    for (p, name) in result.problems.iter().enumerate() {
        let Some(svg) = render_convergence_svg(result, p) else {
            continue;
        };
        let path = dir.join(format!("convergence_{:02}_{}.svg", p + 1, slug(name)));
        std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        files.convergence.push(path);
    }

    let failures: Vec<String> = result
        .failures()
        .map(|c| match &c.status {
            super::CellStatus::Failed { reason } => {
                format!("{}\t{}\t{}", c.problem, c.algorithm, reason)
            }
            super::CellStatus::Completed { .. } => unreachable!(),
        })
        .collect();
    if !failures.is_empty() {
        let path = dir.join("failures.txt");
        std::fs::write(&path, failures.join("\n") + "\n").map_err(|e| Error::io(&path, e))?;
        files.failures = Some(path);
    }
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{AlgorithmConfig, QigaConfig, SgaConfig};
    use crate::harness::{run_experiment, AlgorithmEntry, ExperimentPlan};
    use crate::problems::ProblemSpec;

    fn result() -> ExperimentResult {
        let plan = ExperimentPlan {
            runs_per_cell: 2,
            max_fitness_evaluations: 300,
            ..ExperimentPlan::new(
                vec![ProblemSpec::Trap(3)],
                vec![
                    AlgorithmEntry::new("QIGA2", AlgorithmConfig::Qiga(QigaConfig::default())),
                    AlgorithmEntry::new("SGA", AlgorithmConfig::Sga(SgaConfig::default())),
                ],
            )
        };
        run_experiment(&plan).unwrap()
    }

    #[test]
    fn long_form_has_one_row_per_run() {
        let mut buf = Vec::new();
        write_runs_csv(&result(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "problem,size_N,algorithm,run_seed,best_fitness");
        assert_eq!(lines.len(), 1 + 4);
        assert!(lines[1].starts_with("trap:3,6,QIGA2,0,"));
    }

    #[test]
    fn summary_mean_matches_long_form() {
        let r = result();
        let ranking = rank_algorithms(&r);
        let (mut runs, mut summary) = (Vec::new(), Vec::new());
        write_runs_csv(&r, &mut runs).unwrap();
        write_summary_csv(&r, &ranking, &mut summary).unwrap();

        let mut long = csv::Reader::from_reader(runs.as_slice());
        let rows: Vec<csv::StringRecord> = long.records().map(|r| r.unwrap()).collect();
        let mut agg = csv::Reader::from_reader(summary.as_slice());
        let mut wins = 0;
        for rec in agg.records() {
            let rec = rec.unwrap();
            let values: Vec<f64> = rows
                .iter()
                .filter(|r| r[0] == rec[0] && r[2] == rec[1])
                .map(|r| r[4].parse().unwrap())
                .collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let reported: f64 = rec[2].parse().unwrap();
            assert!((mean - reported).abs() <= 1e-9);
            wins += rec[6].parse::<usize>().unwrap();
        }
        assert!(wins >= 1);
    }

    #[test]
    fn export_writes_all_files_byte_stably() {
        let r = result();
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let fa = export_all(&r, a.path()).unwrap();
        export_all(&r, b.path()).unwrap();
        assert_eq!(fa.convergence.len(), 1);
        assert!(fa.failures.is_none());
        for entry in std::fs::read_dir(a.path()).unwrap() {
            let name = entry.unwrap().file_name();
            let x = std::fs::read(a.path().join(&name)).unwrap();
            let y = std::fs::read(b.path().join(&name)).unwrap();
            assert_eq!(x, y, "{name:?}");
        }
        let svg = std::fs::read_to_string(&fa.convergence[0]).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn trajectory_csv() {
        let r = result();
        let run = &r.cells[0].runs()[0];
        let mut buf = Vec::new();
        write_trajectory_csv(run, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 301);
        assert!(text.starts_with("evaluation,best_so_far\n1,"));
    }

    #[test]
    fn unwritable_directory_is_an_io_error() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("plain");
        std::fs::write(&file, "x").unwrap();
        assert!(matches!(
            export_all(&result(), file.join("sub")),
            Err(Error::Io { .. })
        ));
    }
}
