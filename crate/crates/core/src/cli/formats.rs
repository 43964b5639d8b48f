/// Documentation of every file written by the command-line tool.
pub const FORMATS: &str = "\
conekit output formats

All files are UTF-8 with LF line endings. Floating-point values are written as the shortest
decimal that reads back to the same double. Every JSON report carries `command`, `seed` and
`weight` ({domain, d, beta, gamma, mu}).

points.csv        j,t,x1..xd,weight
                  one row per node; j is the ring index, weight the cell mass of the node
points.json       eps, cardinality, rings, min_separation, covering_estimate, covering_probes

rule.csv          j,t,x1..xd,weight
                  positive cubature nodes and weights
rule.json         meta {weight, degree, residual, delta, nodes, seed}, candidates, min_weight,
                  weight_over_cap_min, weight_over_cap_max (lambda_z / cap(z, delta / n))

kernel_decay.csv  n,kappa,sup_N1,sup_N2,sup_N3,pairs
                  normalized suprema of the localized kernel over the probe pairs
kernel_oracle.csv n,max_rel_err,pairs
                  |addition - basis sum| / (1 + |basis sum|) for the reproducing kernel

frame/frame.json  weight, J, delta, cutoff, seed, elements, levels [{j, eps, rule_degree,
                  residual, nodes, file}]
frame/level_<j>.csv
                  j,t,x1..xd,weight   nodes of level j; weight is the cubature weight lambda_z
coefficients      j,node_index,coef  (library format for frame coefficients)

parseval.json     J, degree, trials, defect (max |sum |<f, psi>|^2 - ||f||^2| / ||f||^2)
sandwich/<function>_r<r>.csv
                  n,E_n,K_hat,omega,ratio   L2 best error, K-functional upper bound at t = 1/n,
                  modulus at t = 1/n and omega / K_hat
sandwich/corpus.json
                  config, functions, truncation, rows, bands
nikolskii.csv     n,random,extremal   ||f||_inf / ||f||_2 (random max; sqrt of max K_n(p, p))
bernstein.csv     n,r,random,sup      ||(-D)^{r/2} f||_2 / (n^r ||f||_2)
nearbest.csv      n,nodes,sup_error   grid maximum of |L_n * f - f|
check.json        suite, invariants [{id, value, tolerance, passed}], failed

<name>.gp         gnuplot script for <name>.csv (with --gnuplot)

Exit codes: 0 success, 2 invalid configuration, 3 numerical infeasibility, 4 invariant failure.
";
