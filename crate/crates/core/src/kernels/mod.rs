// placeholder
pub struct ComplexSlope<F>(pub F);
pub struct QuadratureSpec<F>(pub F);
