// placeholder
pub struct SurfaceTensionEval<F>(pub F);
pub struct DiscreteProfile<F>(pub F);
