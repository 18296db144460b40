import setuptools

setuptools.setup(
    name="rimaps",
    version="0.1.0",
    description="Verification engine for anti-invariant Riemannian maps",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    license="Apache-2.0",
    packages=setuptools.find_packages(".", exclude=["tests", "tests.*"]),
    package_data={"rimaps.cli": ["scenarios/*.scn"]},
    python_requires=">=3.7",
    install_requires=["numpy"],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["rimaps=rimaps.cli.Main:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: Apache Software License",
        "Topic :: Scientific/Engineering :: Mathematics"
    ])
