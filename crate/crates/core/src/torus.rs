pub struct TorusWeights<F>(pub F);
