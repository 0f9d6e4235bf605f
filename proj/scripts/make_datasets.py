#!/usr/bin/env python3
"""Regenerate the bundled datasets under data/.

Everything is deterministic. Real sources are used where a library ships
them (sunspot numbers, Iris, the 569-case breast-cancer set); the remaining
series come from the standard chaotic systems, and the larger UCI
classification sets are replaced by synthetic stand-ins with the same
feature/class geometry, cut down to desk-scale row counts.
"""

import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def write_series(name, values):
    path = OUT / name
    with open(path, "w") as fh:
        for v in values:
            fh.write(f"{v:.8g}\n")
    print(f"{path.name}: {len(values)} points")


def write_table(name, features, labels):
    path = OUT / name
    with open(path, "w") as fh:
        for row, label in zip(features, labels):
            cells = ",".join(f"{v:.6g}" for v in row)
            fh.write(f"{cells},{int(label)}\n")
    print(f"{path.name}: {features.shape[0]} rows, "
          f"{features.shape[1]} features, {len(set(labels))} classes")


def rk4(f, state, dt, steps):
    out = np.empty((steps, len(state)))
    s = np.asarray(state, dtype=float)
    for i in range(steps):
        k1 = f(s)
        k2 = f(s + 0.5 * dt * k1)
        k3 = f(s + 0.5 * dt * k2)
        k4 = f(s + dt * k3)
        s = s + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        out[i] = s
    return out


def make_lorenz(n=1500):
    def field(s):
        x, y, z = s
        return np.array([10.0 * (y - x), x * (28.0 - z) - y, x * y - 8.0 / 3.0 * z])

    traj = rk4(field, [1.0, 1.0, 1.0], 0.01, n + 2000)
    return traj[2000:, 0]


def make_lazer(n=1500):
    # chaotic pulsation surrogate: finely sampled Lorenz amplitude, min-max
    # quantized to the 8-bit integer counts of the photodetector record it
    # stands in for
    def field(s):
        x, y, z = s
        return np.array([10.0 * (y - x), x * (28.0 - z) - y, x * y - 8.0 / 3.0 * z])

    traj = rk4(field, [0.5, 1.0, 1.05], 0.01, n + 3000)
    x = traj[3000:, 0]
    scaled = 255.0 * (x - x.min()) / (x.max() - x.min())
    return np.round(scaled).astype(int)


def make_rossler(n=1500):
    def field(s):
        x, y, z = s
        return np.array([-y - z, x + 0.2 * y, 0.2 + z * (x - 5.7)])

    traj = rk4(field, [0.1, 0.0, 0.1], 0.05, n + 2000)
    return traj[2000:, 0]


def make_henon(n=1500):
    x, y = 0.1, 0.3
    out = []
    for _ in range(n + 500):
        x, y = 1.0 - 1.4 * x * x + y, 0.3 * x
        out.append(x)
    return np.array(out[500:])


def make_mackey(n=1500, tau=17):
    # Euler integration of the delay equation, dt = 1
    history = 1.2 * np.ones(tau + 1)
    series = list(history)
    for _ in range(n + 1000):
        x_tau = series[-tau - 1]
        x = series[-1]
        series.append(x + 0.2 * x_tau / (1.0 + x_tau ** 10) - 0.1 * x)
    return np.array(series[-n:])


def make_sunspot():
    import statsmodels.api as sm

    data = sm.datasets.sunspots.load_pandas().data
    return data["SUNACTIVITY"].to_numpy()


def classification_sets():
    from sklearn.datasets import load_breast_cancer, load_iris, make_classification

    iris = load_iris()
    write_table("iris.csv", iris.data, iris.target)

    # 569 cases, two classes; the nine mean-value measurements keep the
    # published 9-attribute geometry
    cancer = load_breast_cancer()
    write_table("cancer.csv", cancer.data[:, :9], cancer.target)

    # stand-ins for sets with no bundled source, same feature/class geometry,
    # desk-scale row counts
    specs = {
        "ionosphere.csv": dict(n_samples=351, n_features=34, n_informative=12,
                               n_classes=2, class_sep=1.6, random_state=7),
        "bank.csv": dict(n_samples=2000, n_features=20, n_informative=10,
                         n_classes=2, class_sep=1.2, random_state=11),
        "pendigit.csv": dict(n_samples=2000, n_features=16, n_informative=12,
                             n_classes=10, n_clusters_per_class=1,
                             class_sep=2.2, random_state=13),
        "chess.csv": dict(n_samples=3000, n_features=6, n_informative=6,
                          n_redundant=0, n_classes=18, n_clusters_per_class=1,
                          class_sep=2.8, random_state=17),
    }
    for name, spec in specs.items():
        X, y = make_classification(**spec)
        write_table(name, X, y)


def main():
    OUT.mkdir(exist_ok=True)
    write_series("lazer.csv", make_lazer())
    write_series("sunspot.csv", make_sunspot())
    write_series("mackey.csv", make_mackey())
    write_series("lorenz.csv", make_lorenz())
    write_series("henon.csv", make_henon())
    write_series("rossler.csv", make_rossler())
    classification_sets()


if __name__ == "__main__":
    main()
