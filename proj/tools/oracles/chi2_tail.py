"""Chi-square upper-tail reference values from scipy.stats.chi2.sf."""

from scipy.stats import chi2

PAIRS = [(3.841458820694124, 1), (0.5, 1), (10.0, 4), (7.0, 7),
         (100.0, 80), (250.0, 200), (1e-12, 3)]


def main():
    for stat, dof in PAIRS:
        print(f"sf({stat!r}, {dof}) = {chi2.sf(stat, dof):.17e}")


if __name__ == "__main__":
    main()
