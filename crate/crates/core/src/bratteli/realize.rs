use crate::algebra::Element;
use crate::bratteli::MultiplicityMatrix;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// One copy of a source block placed on the diagonal of a target block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    /// 0-based source block.
    pub source_block: usize,
    pub copy: usize,
}

/// The standard block-diagonal representative of an embedding's unitary
/// conjugacy class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedEmbedding {
    matrix: MultiplicityMatrix,
    placement: Vec<Vec<Slot>>,
}

impl RealizedEmbedding {
    pub fn matrix(&self) -> &MultiplicityMatrix {
        &self.matrix
    }

    /// Diagonal slots of each target block, top-left first.
    pub fn placement(&self) -> &[Vec<Slot>] {
        &self.placement
    }

    /// Image of `x`: target block `j` is the block-diagonal arrangement of the
    /// source blocks listed in its placement.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        x.validate(self.matrix.source())?;
        let blocks = self
            .placement
            .iter()
            .zip(self.matrix.target().sizes())
            .map(|(slots, &m)| {
                let mut out = CMatrix::zeros(m, m);
                let mut offset = 0;
                for slot in slots {
                    let b = &x.blocks()[slot.source_block];
                    let n = b.nrows();
                    out.view_mut((offset, offset), (n, n)).copy_from(b);
                    offset += n;
                }
                out
            })
            .collect();
        Element::from_blocks(blocks)
    }
}

/// Packs, for every target block `j`, `E[0][j]` copies of source block 0, then
/// `E[1][j]` copies of source block 1, and so on down the diagonal.
pub fn realize(e: &MultiplicityMatrix) -> Result<RealizedEmbedding> {
    if !e.is_unital_injective() {
        return Err(Error::Matrix(format!(
            "{e} is not a unital injective embedding"
        )));
    }
    let placement = (0..e.cols())
        .map(|j| {
            (0..e.rows())
                .flat_map(|i| {
                    (0..e.get(i, j)).map(move |copy| Slot {
                        source_block: i,
                        copy,
                    })
                })
                .collect()
        })
        .collect();
    Ok(RealizedEmbedding {
        matrix: e.clone(),
        placement,
    })
}
