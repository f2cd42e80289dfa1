use incidence_core::{Position, SolveOptions, SolveResult};
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct ResultRecord {
    pub input_sha256: String,
    pub convention: String,
    pub vertices: usize,
    pub edges: usize,
    pub free: usize,
    pub ls: Option<i64>,
    pub rs: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_moves: Option<PerSide<Vec<u32>>>,
    pub nodes_expanded: PerSide<u64>,
    pub memo_hits: PerSide<u64>,
    pub options: OptionsRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Default, Serialize)]
pub struct PerSide<T> {
    pub left: Option<T>,
    pub right: Option<T>,
}

#[derive(Debug, Serialize)]
pub struct OptionsRecord {
    pub twin_reduction: bool,
    pub symmetry: bool,
    pub domination: bool,
    pub alpha_beta: bool,
    pub workers: usize,
    pub max_nodes: Option<u64>,
    pub max_free: Option<usize>,
}

impl From<&SolveOptions> for OptionsRecord {
    fn from(o: &SolveOptions) -> Self {
        OptionsRecord {
            twin_reduction: o.twin_reduction,
            symmetry: o.symmetry,
            domination: o.domination,
            alpha_beta: o.alpha_beta,
            workers: o.workers,
            max_nodes: o.max_nodes,
            max_free: o.size_budget,
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Timing {
    pub left_ms: Option<f64>,
    pub right_ms: Option<f64>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ResultRecord {
    pub fn new(input: &[u8], p: &Position, options: &SolveOptions, moves: bool) -> Self {
        ResultRecord {
            input_sha256: digest(input),
            convention: p.convention().to_string(),
            vertices: p.vertex_count(),
            edges: p.board().edge_count(),
            free: p.free_count(),
            ls: None,
            rs: None,
            optimal_moves: moves.then(PerSide::default),
            nodes_expanded: PerSide::default(),
            memo_hits: PerSide::default(),
            options: options.into(),
            timing: None,
        }
    }

    pub fn set_left(&mut self, r: &SolveResult) {
        self.ls = Some(r.value);
        if let Some(m) = &mut self.optimal_moves {
            m.left = Some(r.optimal_moves.iter().map(|v| v.0).collect());
        }
        self.nodes_expanded.left = Some(r.nodes_expanded);
        self.memo_hits.left = Some(r.memo_hits);
    }

    pub fn set_right(&mut self, r: &SolveResult) {
        self.rs = Some(r.value);
        if let Some(m) = &mut self.optimal_moves {
            m.right = Some(r.optimal_moves.iter().map(|v| v.0).collect());
        }
        self.nodes_expanded.right = Some(r.nodes_expanded);
        self.memo_hits.right = Some(r.memo_hits);
    }
}
