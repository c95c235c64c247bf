from doctest import DocFileSuite

import sheaflab

DOCTEST_MODULES = {
    sheaflab: [
        "_errors.py",
        "_config.py",
        "_finspace.py",
        "_algebra.py",
        "_presheaf.py",
        "_stalks.py",
        "_plus.py",
        "_reflect.py",
        "_codec.py",
        "_console.py",
    ]
}

DOCTEST_FILES = ["../README.md"]


def load_tests(loader, tests, ignore):
    for mod, modfiles in DOCTEST_MODULES.items():
        for file in modfiles:
            tests.addTest(DocFileSuite(file, package=mod))

    for file in DOCTEST_FILES:
        tests.addTest(DocFileSuite(file))

    return tests
