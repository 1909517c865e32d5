use clap::Args;
use kclique::{Error, Model, Result};

/// Generator parameters. Single values for `generate`, comma-separated
/// grids for `bench`; `bench` takes the cartesian product of the lists a
/// model actually uses.
#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// lemma2, lemma3, complete, complete_bipartite, cycle, path or gnp
    #[arg(long, value_delimiter = ',', required = true)]
    pub model: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<usize>,
    /// Isolated vertices appended to lemma3.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub n_pad: Vec<usize>,
    /// Left side of complete_bipartite.
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    /// gnp only: edge probability `c / n`, used when --p is absent.
    #[arg(long, value_delimiter = ',')]
    pub avg_degree: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seed: Vec<u64>,
}

fn need<'a, T>(values: &'a [T], flag: &str, model: &str) -> Result<&'a [T]> {
    if values.is_empty() {
        return Err(Error::Contract(format!("--{flag} is required for model {model}")));
    }
    Ok(values)
}

impl ModelArgs {
    pub fn expand(&self) -> Result<Vec<Model>> {
        let mut out = Vec::new();
        for name in &self.model {
            let name = name.as_str();
            match name {
                "lemma2" => {
                    for &n in need(&self.n, "n", name)? {
                        for &m in need(&self.m, "m", name)? {
                            out.push(Model::Lemma2 { n, m });
                        }
                    }
                }
                "lemma3" => {
                    for &k in need(&self.k, "k", name)? {
                        for &b in need(&self.b, "b", name)? {
                            for &n_pad in &self.n_pad {
                                out.push(Model::Lemma3 { k, b, n_pad });
                            }
                        }
                    }
                }
                "complete" => out.extend(need(&self.n, "n", name)?.iter().map(|&n| Model::Complete { n })),
                "cycle" => out.extend(need(&self.n, "n", name)?.iter().map(|&n| Model::Cycle { n })),
                "path" => out.extend(need(&self.n, "n", name)?.iter().map(|&n| Model::Path { n })),
                "complete_bipartite" => {
                    for &a in need(&self.a, "a", name)? {
                        for &b in need(&self.b, "b", name)? {
                            out.push(Model::CompleteBipartite { a, b });
                        }
                    }
                }
                "gnp" => {
                    for &n in need(&self.n, "n", name)? {
                        let ps: Vec<f64> = if !self.p.is_empty() {
                            self.p.clone()
                        } else if !self.avg_degree.is_empty() {
                            self.avg_degree.iter().map(|c| (c / n as f64).min(1.0)).collect()
                        } else {
                            return Err(Error::Contract("--p or --avg-degree is required for model gnp".into()));
                        };
                        for &p in &ps {
                            for &seed in &self.seed {
                                out.push(Model::RandomGnp { n, p, seed });
                            }
                        }
                    }
                }
                other => return Err(Error::Contract(format!("unknown model {other:?}"))),
            }
        }
        Ok(out)
    }

    pub fn single(&self) -> Result<Model> {
        let mut models = self.expand()?;
        if models.len() != 1 {
            return Err(Error::Contract(format!(
                "generate needs exactly one parameter combination, got {}",
                models.len()
            )));
        }
        Ok(models.remove(0))
    }
}
