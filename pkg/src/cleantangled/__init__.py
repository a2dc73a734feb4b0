"""Clean tangled clutters: cores, setcores, projective geometries and minors."""
